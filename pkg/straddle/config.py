#
# config.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Run configuration: JSON files made of validated blocks.

A configuration looks like

  {"model": {"family": "mg1", "rate": 0.5, "theta": 0.5,
             "service": {"kind": "exponential", "rate": 1.0}},
   "sim": {"customers": 1000000, "replications": 10, "seed": 7},
   "sweep": {"theta_min": -1, "theta_max": 1, "steps": 20},
   "output": {"csv": "sweep.csv"}}

Scalars anywhere in the tree may be overridden with "path=value" strings,
e.g. "model.theta=-0.5".
"""

import json
import os.path

from straddle.errors import *
from straddle.specs import *
from straddle.fileutil import opened
from straddle import distlib
from straddle import models
from straddle.sim import SimConfig

ACTIONS = ("analyze", "simulate", "compare", "sweep", "invert")

def _prefixed(name, error):
    if isinstance(error, ConfigError):
        return ConfigError("{0}.{1}".format(name, error))
    return ConfigError("{0}: {1}".format(name, error))

class Block:
    _fieldspec = tuple()

    def __init__(self, **kwargs):
        unknown = set(kwargs) - set(spec.name for spec in self._fieldspec)
        if unknown:
            raise ConfigError("{0}: unknown field".format(sorted(unknown)[0]))
        for spec in self._fieldspec:
            try:
                setattr(self, spec.name, kwargs.get(spec.name, None))
            except (TypeError, ValueError) as e:
                raise _prefixed(spec.name, e)

    def __setattr__(self, name, value):
        # Automatic validation on assignment
        for spec in self._fieldspec:
            if name == spec.name:
                value = spec.validate(self, value)
                break
        super().__setattr__(name, value)

    @classmethod
    def from_dict(cls, mapping):
        return cls(**mapping)

    def to_dict(self):
        result = {}
        for spec in self._fieldspec:
            value = getattr(self, spec.name)
            if isinstance(value, Block):
                value = value.to_dict()
            if value is not None:
                result[spec.name] = value
        return result

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, self.to_dict())

class ServiceBlock(Block):
    _fieldspec = (ChoiceSpec("kind", sorted(distlib.known_kinds)),
                  optionalspec(FloatSpec("rate", low=0, open=["low"])),
                  optionalspec(IntegerSpec("shape", low=1)),
                  optionalspec(SequenceSpec("weights", FloatSpec("weight", 0, 1), 1)),
                  optionalspec(SequenceSpec("rates", FloatSpec("rate", low=0, open=["low"]), 1)))

    def build(self):
        params = {name: getattr(self, name)
                  for name in ("rate", "shape", "weights", "rates")
                  if getattr(self, name) is not None}
        try:
            return distlib.build(self.kind, **params)
        except TypeError as e:
            raise ConfigError("service: bad parameters for {0}: {1}".format(self.kind, e))
        except DomainError as e:
            raise ConfigError("service: {0}".format(e))

class ModelBlock(Block):
    _fieldspec = (ChoiceSpec("family", sorted(models.known_families)),
                  FloatSpec("rate", low=0, open=["low"]),
                  FloatSpec("theta", -1, 1),
                  BlockSpec("service", ServiceBlock),
                  optionalspec(IntegerSpec("stages", low=1)),
                  optionalspec(IntegerSpec("max_stages", low=1), models.MAX_STAGES),
                  optionalspec(RecordSpec("omega", FloatSpec("a", 0, 1, open=["low", "high"]),
                                          FloatSpec("p", 0, 1))))

    def build(self, **overrides):
        params = {"rate": self.rate, "theta": self.theta,
                  "service": self.service.build()}
        if self.family == "erlang":
            if self.stages is None:
                raise ConfigError("model.stages: required for the erlang family")
            params["stages"] = self.stages
            params["max_stages"] = self.max_stages
        elif self.family == "proportional":
            if not self.omega:
                raise ConfigError("model.omega: required for the proportional family")
            params["atoms"] = self.omega
        params.update(overrides)
        try:
            return models.build(self.family, **params)
        except UnstableModelError:
            raise
        except ModelError as e:
            raise ConfigError("model: {0}".format(e))

class SimBlock(Block):
    _fieldspec = (optionalspec(IntegerSpec("customers", low=1), 10 ** 6),
                  optionalspec(IntegerSpec("warmup", low=0)),
                  optionalspec(IntegerSpec("replications", low=1), 10),
                  optionalspec(IntegerSpec("seed", low=0, high=2 ** 64 - 1), 0),
                  optionalspec(IntegerSpec("jobs", low=1), 1),
                  optionalspec(BooleanSpec("debug"), False))

    def build(self, cdf_grid=None, jobs=None):
        if self.warmup is not None and self.warmup >= self.customers:
            raise ConfigError("sim.warmup: must be smaller than sim.customers")
        return SimConfig(customers=self.customers, warmup=self.warmup,
                         replications=self.replications, seed=self.seed,
                         cdf_grid=cdf_grid, jobs=jobs or self.jobs,
                         debug=self.debug)

class SweepBlock(Block):
    _fieldspec = (optionalspec(FloatSpec("theta_min", -1, 1), -1.0),
                  optionalspec(FloatSpec("theta_max", -1, 1), 1.0),
                  optionalspec(IntegerSpec("steps", low=1), 20),
                  optionalspec(SequenceSpec("rho", FloatSpec("rho", 0, 1, open=["low", "high"]), 1)))

    def thetas(self):
        if self.theta_max < self.theta_min:
            raise ConfigError("sweep.theta_max: must not be below sweep.theta_min")
        width = self.theta_max - self.theta_min
        # Rounding keeps grid points such as 0.1 exact in the CSV.
        return [round(self.theta_min + width * i / self.steps, 12)
                for i in range(self.steps + 1)]

class InvertBlock(Block):
    _fieldspec = (optionalspec(FloatSpec("t_max", low=0, open=["low"])),
                  optionalspec(IntegerSpec("points", low=1), 200),
                  optionalspec(IntegerSpec("terms", low=2, high=40), 16))

class OutputBlock(Block):
    _fieldspec = (optionalspec(StringSpec("report")),
                  optionalspec(StringSpec("csv")),
                  optionalspec(StringSpec("ecdf")))

    def __setattr__(self, name, value):
        if isinstance(value, str):
            parent = os.path.dirname(os.path.abspath(value))
            if not os.path.isdir(parent):
                raise ValueError("Directory does not exist: {0}".format(parent))
        super().__setattr__(name, value)

class RunConfig(Block):
    _fieldspec = (optionalspec(ChoiceSpec("action", ACTIONS)),
                  BlockSpec("model", ModelBlock),
                  optionalspec(BlockSpec("sim", SimBlock)),
                  BlockSpec("sweep", SweepBlock),
                  BlockSpec("invert", InvertBlock),
                  BlockSpec("output", OutputBlock))

def parse_value(text):
    "JSON if TEXT parses as JSON, the plain string otherwise."
    try:
        return json.loads(text)
    except ValueError:
        return text

def apply_override(mapping, assignment):
    "Apply one 'dotted.path=value' assignment to the nested MAPPING."
    (path, sep, text) = assignment.partition("=")
    if not sep or not path.strip():
        raise ConfigError("Invalid override {0!r}; expected path=value".format(assignment))
    keys = path.strip().split(".")
    node = mapping
    for key in keys[:-1]:
        child = node.setdefault(key, {})
        if not isinstance(child, dict):
            raise ConfigError("{0}: not a block".format(key))
        node = child
    node[keys[-1]] = parse_value(text.strip())
    return mapping

def decode(text, label="<config>"):
    "Parse config TEXT into a plain mapping."
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("{0}:{1}:{2}: {3}".format(label, e.lineno, e.colno, e.msg))
    if not isinstance(mapping, dict):
        raise ConfigError("{0}: top level must be a mapping".format(label))
    return mapping

def load(filename=None, overrides=(), action=None):
    "Read FILENAME (a path or an open file, if any), apply OVERRIDES and validate."
    mapping = {}
    if filename is not None:
        label = filename if isinstance(filename, str) else getattr(filename, "name", "<config>")
        try:
            with opened(filename, "r") as file:
                text = file.read()
        except EnvironmentError as e:
            raise ConfigError("{0}: {1}".format(label, e.strerror or e))
        mapping = decode(text, label)
    for assignment in overrides:
        apply_override(mapping, assignment)
    if action is not None:
        mapping["action"] = action
    return RunConfig.from_dict(mapping)
