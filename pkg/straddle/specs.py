#
# specs.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Field specifications for configuration blocks.

A block class lists its fields in _fieldspec; each Spec checks and
normalizes values assigned to its field, raising TypeError or ValueError.
"""

import abc
import math
import numbers

from abc import abstractmethod

from straddle.errors import *

def optionalspec(spec, default=None):
    spec._optional = True
    spec.default = default
    return spec

class Spec(metaclass=abc.ABCMeta):
    def __init__(self, name):
        self.name = name

    _optional = False
    default = None

    @abstractmethod
    def check(self, block, value): pass

    def validate(self, block, value):
        if value is None:
            if self._optional:
                return self.default
            raise ValueError("Missing required field")
        return self.check(block, value)

class FloatSpec(Spec):
    """A real number, optionally bounded.  OPEN lists the bounds that are
    excluded, as a subset of "low" and "high"."""
    def __init__(self, name, low=None, high=None, open=()):
        super().__init__(name)
        self.low = low
        self.high = high
        self.open = frozenset(open)

    def check(self, block, value):
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise TypeError("Not a number: {0!r}".format(value))
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            raise ValueError("Not a finite number: {0!r}".format(value))
        if self.low is not None:
            if value < self.low or ("low" in self.open and value == self.low):
                raise ValueError("{0!r} is below the allowed range".format(value))
        if self.high is not None:
            if value > self.high or ("high" in self.open and value == self.high):
                raise ValueError("{0!r} is above the allowed range".format(value))
        return value

class IntegerSpec(Spec):
    def __init__(self, name, low=None, high=None):
        super().__init__(name)
        self.low = low
        self.high = high

    def check(self, block, value):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if type(value) is not int:
            raise TypeError("Not an integer: {0!r}".format(value))
        if self.low is not None and value < self.low:
            raise ValueError("Value must be at least {0}".format(self.low))
        if self.high is not None and value > self.high:
            raise ValueError("Value must be at most {0}".format(self.high))
        return value

class BooleanSpec(Spec):
    def check(self, block, value):
        if not isinstance(value, bool):
            raise TypeError("Not a boolean: {0!r}".format(value))
        return value

class StringSpec(Spec):
    def check(self, block, value):
        if not isinstance(value, str):
            raise TypeError("Not a string: {0!r}".format(value))
        return value

class ChoiceSpec(Spec):
    def __init__(self, name, choices):
        super().__init__(name)
        self.choices = tuple(choices)

    def check(self, block, value):
        if not isinstance(value, str):
            raise TypeError("Not a string: {0!r}".format(value))
        norm = value.lower()
        if norm not in self.choices:
            raise ValueError("Unknown choice {0!r}; expected one of {1}"
                             .format(value, ", ".join(self.choices)))
        return norm

class SequenceSpec(Spec):
    "A list of values, each validated by SPEC."
    def __init__(self, name, spec, min_length=0):
        super().__init__(name)
        self.spec = spec
        self.min_length = min_length

    def check(self, block, values):
        if isinstance(values, (str, bytes, dict)) or not hasattr(values, "__iter__"):
            raise TypeError("Not a list: {0!r}".format(values))
        values = [self.spec.check(block, v) for v in values]
        if len(values) < self.min_length:
            raise ValueError("Need at least {0} entries".format(self.min_length))
        return values

class RecordSpec(Spec):
    "A list of small mappings whose keys are validated by FIELDS."
    def __init__(self, name, *fields):
        super().__init__(name)
        self.fields = fields

    def check(self, block, values):
        if isinstance(values, (str, dict)) or not hasattr(values, "__iter__"):
            raise TypeError("Not a list of records: {0!r}".format(values))
        records = []
        for (i, record) in enumerate(values):
            if not isinstance(record, dict):
                raise TypeError("Entry {0} is not a mapping".format(i))
            unknown = set(record) - set(spec.name for spec in self.fields)
            if unknown:
                raise ValueError("Entry {0} has unknown keys: {1}"
                                 .format(i, ", ".join(sorted(unknown))))
            checked = {}
            for spec in self.fields:
                try:
                    checked[spec.name] = spec.validate(block, record.get(spec.name))
                except (TypeError, ValueError) as e:
                    raise type(e)("[{0}].{1}: {2}".format(i, spec.name, e))
            records.append(checked)
        return records

class BlockSpec(Spec):
    "A nested configuration block of class BLOCKCLASS."
    def __init__(self, name, blockclass):
        super().__init__(name)
        self.blockclass = blockclass

    def validate(self, block, value):
        if value is None:
            if self._optional:
                return None
            value = {}
        return self.check(block, value)

    def check(self, block, value):
        if isinstance(value, self.blockclass):
            return value
        if not isinstance(value, dict):
            raise TypeError("Not a block: {0!r}".format(value))
        return self.blockclass.from_dict(value)
