#
# errors.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

class Error(Exception): pass

class Warning(Error, UserWarning): pass

class IllConditionedWarning(Warning): pass
class DivergenceWarning(Warning): pass
class InversionClipWarning(Warning): pass

class DomainError(Error, ValueError): pass
class CapabilityError(Error, TypeError): pass
class ConfigError(Error, ValueError): pass
class ModelError(Error, ValueError): pass
class UnstableModelError(ModelError): pass

class NumericalError(Error): pass
class ContourTooClose(NumericalError): pass
class SingularSystem(NumericalError): pass
class RangeViolation(NumericalError): pass
class OracleMismatch(NumericalError): pass
class EvaluationFailure(NumericalError): pass
class TransformOverflow(NumericalError): pass

class RootCountMismatch(NumericalError):
    def __init__(self, found, winding, expected):
        super().__init__("found {0} roots with positive real part, "
                         "winding count {1}, expected {2}"
                         .format(found, winding, expected))
        self.found = found
        self.winding = winding
        self.expected = expected

class ComparisonFailure(Error): pass
