#
# models.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Queue model families.

All families share a single server fed by i.i.d. pairs (S_n, A_n), where
A_n is the time between the arrivals of customers n and n+1.  The service
time is coupled to a "partner" variable by the FGM copula:

  mg1           A ~ Exp(rate), (S, A) FGM
  erlang        A ~ Erlang(stages, rate), (S, A) FGM
  proportional  A = Omega S + J, J ~ Exp(rate), (S, J) FGM, Omega discrete
"""

import abc
import math
import numbers

from straddle.errors import *
from straddle.copula import check_theta, rank_correlations
from straddle.distlib import DistributionSpec, Exponential, Erlang
from straddle.kernel import Kernel, partner_terms

MAX_STAGES = 8

known_families = {}

def modelfamily(cls):
    assert issubclass(cls, QueueModel)
    assert cls.family is not None
    known_families[cls.family] = cls
    return cls

def _check_rate(rate):
    if isinstance(rate, bool) or not isinstance(rate, numbers.Real):
        raise ModelError("Arrival rate must be a number: {0!r}".format(rate))
    if not rate > 0 or math.isinf(rate):
        raise ModelError("Arrival rate must be positive: {0!r}".format(rate))
    return float(rate)

class OmegaAtoms:
    "Discrete law of the proportion Omega: atoms a_i with probabilities p_i."
    def __init__(self, atoms):
        pairs = []
        for atom in atoms:
            if isinstance(atom, dict):
                (a, p) = (atom["a"], atom["p"])
            else:
                (a, p) = atom
            pairs.append((float(a), float(p)))
        if not pairs:
            raise ModelError("At least one omega atom is required")
        pairs.sort()
        for (a, p) in pairs:
            if not 0 < a < 1:
                raise ModelError("Omega atoms must lie in (0, 1): {0!r}".format(a))
            if p < 0:
                raise ModelError("Omega probabilities must be nonnegative")
        for (first, second) in zip(pairs, pairs[1:]):
            if first[0] == second[0]:
                raise ModelError("Duplicate omega atom {0!r}".format(first[0]))
        if abs(sum(p for (a, p) in pairs) - 1.0) > 1e-12:
            raise ModelError("Omega probabilities must sum to one")
        self.atoms = tuple(pairs)

    @property
    def values(self):
        return [a for (a, p) in self.atoms]

    @property
    def probabilities(self):
        return [p for (a, p) in self.atoms]

    @property
    def mean(self):
        return sum(a * p for (a, p) in self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        return "OmegaAtoms({0!r})".format(list(self.atoms))


class QueueModel(metaclass=abc.ABCMeta):
    family = None

    def __init__(self, rate, theta, service):
        if not isinstance(service, DistributionSpec):
            raise ModelError("Service must be a distribution spec")
        self.rate = _check_rate(rate)
        self.theta = check_theta(theta)
        self.service = service
        self._kernel = None
        # [S - A]^+ evaluator cached by the Erlang solver.
        self._splus_evaluator = None
        self._splus_validated = False

    # The variable glued to S by the copula.
    @property
    @abc.abstractmethod
    def partner(self): pass

    # The interarrival law, when (S, A) itself is an FGM pair.
    arrival = None

    @property
    @abc.abstractmethod
    def rho(self): pass

    @abc.abstractmethod
    def _kernel_terms(self): pass

    @abc.abstractmethod
    def expected_roots(self): pass

    @property
    def stages(self):
        return 1

    def check_stable(self):
        if not self.rho < 1:
            raise UnstableModelError(
                "Unstable {0} model: traffic intensity {1:.6g} >= 1"
                .format(self.family, self.rho))

    def kernel(self):
        if self._kernel is None:
            self._kernel = Kernel(self._kernel_terms())
        return self._kernel

    def rank_correlations(self):
        return rank_correlations(self.theta)

    def to_dict(self):
        return {"family": self.family, "rate": self.rate, "theta": self.theta,
                "service": self.service.to_dict()}

    def __repr__(self):
        return "<{0} rate={1!r} theta={2!r} service={3!r}>".format(
            type(self).__name__, self.rate, self.theta, self.service)

@modelfamily
class MG1(QueueModel):
    family = "mg1"

    def __init__(self, rate, theta, service):
        super().__init__(rate, theta, service)
        self.arrival = Exponential(self.rate)

    @property
    def partner(self):
        return self.arrival

    @property
    def rho(self):
        return self.rate * self.service.mean

    def _kernel_terms(self):
        return partner_terms(self.service, self.arrival, self.theta)

    def expected_roots(self):
        return 1 if self.theta != 0 else 0

@modelfamily
class ErlangArrivals(QueueModel):
    family = "erlang"

    def __init__(self, rate, theta, service, stages, max_stages=MAX_STAGES):
        super().__init__(rate, theta, service)
        if isinstance(stages, bool) or not isinstance(stages, int) or stages < 1:
            raise ModelError("Erlang stages must be a positive integer: {0!r}"
                             .format(stages))
        if stages > max_stages:
            raise ModelError("Erlang stages {0} exceed the cap of {1}"
                             .format(stages, max_stages))
        self._stages = stages
        self.arrival = Erlang(stages, self.rate)

    @property
    def stages(self):
        return self._stages

    @property
    def partner(self):
        return self.arrival

    @property
    def rho(self):
        return self.rate * self.service.mean / self._stages

    def _kernel_terms(self):
        return partner_terms(self.service, self.arrival, self.theta)

    def expected_roots(self):
        n = self._stages
        return 3 * n - 2 if self.theta != 0 else n - 1

    def to_dict(self):
        result = super().to_dict()
        result["stages"] = self._stages
        return result

@modelfamily
class Proportional(QueueModel):
    family = "proportional"

    def __init__(self, rate, theta, service, atoms):
        super().__init__(rate, theta, service)
        if not isinstance(atoms, OmegaAtoms):
            atoms = OmegaAtoms(atoms)
        self.atoms = atoms
        self.jump = Exponential(self.rate)

    @property
    def partner(self):
        return self.jump

    @property
    def rho(self):
        return self.rate * self.service.mean * (1 - self.atoms.mean)

    def _kernel_terms(self):
        terms = []
        for (a, p) in self.atoms:
            terms.extend(partner_terms(self.service, self.jump, self.theta,
                                       weight=p, scale=1 - a))
        return terms

    def expected_roots(self):
        return 1 if self.theta != 0 else 0

    def to_dict(self):
        result = super().to_dict()
        result["atoms"] = [{"a": a, "p": p} for (a, p) in self.atoms]
        return result

def build(family, **params):
    try:
        cls = known_families[family.lower()]
    except KeyError:
        raise ModelError("Unknown model family: {0!r}".format(family))
    return cls(**params)
