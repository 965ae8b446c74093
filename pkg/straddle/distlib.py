#
# distlib.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Service and arrival laws with exactly rational transforms.

Every supported law has a density that is a finite combination of terms
c * y**j * exp(-a*y).  Both its Laplace-Stieltjes transform and the
transform of the FGM kernel f(y)(1 - 2F(y)) are then rational functions
of s, which is what the root finders downstream rely on.
"""

import abc
import math

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from scipy import special

from straddle.errors import *

MAX_DEGREE = 512
MAX_DERIVATIVE = 64
POLE_TOLERANCE = 1e-12
REMOVABLE_TOLERANCE = 1e-9

def _same_pole(p, q):
    return abs(p - q) <= POLE_TOLERANCE * max(1.0, abs(p), abs(q))

def _merge_poles(*groups, combine=max):
    merged = []
    for group in groups:
        for (pole, mult) in group:
            for entry in merged:
                if _same_pole(entry[0], pole):
                    entry[1] = combine(entry[1], mult)
                    break
            else:
                merged.append([pole, mult])
    return tuple((pole, mult) for (pole, mult) in merged)

def _linear(pole):
    return Polynomial(np.array([-pole, 1.0], dtype=complex))


class RationalTransform:
    """A rational function N(s) / prod((s - p)**m) in complex arithmetic.

    The denominator is kept in factored form so that sums are taken over
    the least common denominator instead of the plain product; that keeps
    the cleared characteristic polynomials free of spurious repeated roots.
    """
    def __init__(self, numerator, poles=()):
        if not isinstance(numerator, Polynomial):
            numerator = Polynomial(np.atleast_1d(np.asarray(numerator, dtype=complex)))
        else:
            numerator = Polynomial(numerator.coef.astype(complex))
        self.numerator = numerator
        self.poles = _merge_poles([(complex(p), int(m)) for (p, m) in poles if m > 0],
                                  combine=lambda a, b: a + b)
        if self.numerator.degree() > MAX_DEGREE or self.order > MAX_DEGREE:
            raise TransformOverflow("Rational transform degree exceeds {0}"
                                    .format(MAX_DEGREE))
        self._derivatives = [self]

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def partial_fraction(cls, coefficient, pole, power):
        "coefficient / (s - pole)**power"
        return cls([coefficient], [(pole, power)])

    @property
    def order(self):
        return sum(mult for (pole, mult) in self.poles)

    @property
    def denominator(self):
        result = Polynomial([1.0 + 0j])
        for (pole, mult) in self.poles:
            result = result * _linear(pole) ** mult
        return result

    def multiplicity(self, pole):
        for (p, m) in self.poles:
            if _same_pole(p, pole):
                return m
        return 0

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        value = self.numerator(s)
        for (pole, mult) in self.poles:
            value = value / (s - pole) ** mult
        if value.ndim == 0:
            return complex(value)
        return value

    def _lifted(self, poles):
        factor = Polynomial([1.0 + 0j])
        for (pole, mult) in poles:
            missing = mult - self.multiplicity(pole)
            if missing > 0:
                factor = factor * _linear(pole) ** missing
        return self.numerator * factor

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalTransform):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return RationalTransform.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        poles = _merge_poles(self.poles, other.poles)
        return RationalTransform(self._lifted(poles) + other._lifted(poles), poles)

    __radd__ = __add__

    def __neg__(self):
        return RationalTransform(-self.numerator, self.poles)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalTransform(self.numerator * other.numerator,
                                 self.poles + other.poles)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, float, complex, np.number)):
            return NotImplemented
        return RationalTransform(self.numerator / other, self.poles)

    def __pow__(self, power):
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = RationalTransform.constant(1.0)
        for _ in range(power):
            result = result * self
        return result

    def reduced(self, tolerance=REMOVABLE_TOLERANCE):
        """Cancel factors (s - p) shared by the numerator and the poles.

        The numerator counts as vanishing at p when |N(p)| is within
        TOLERANCE of sum |c_k| |p|**k."""
        coef = self.numerator.coef
        poles = []
        for (pole, mult) in self.poles:
            while mult > 0 and len(coef) > 1:
                size = np.sum(np.abs(coef) * abs(pole) ** np.arange(len(coef)))
                if abs(P.polyval(pole, coef)) > tolerance * size:
                    break
                (coef, remainder) = P.polydiv(coef, np.array([-pole, 1.0], dtype=complex))
                mult -= 1
            poles.append((pole, mult))
        return RationalTransform(Polynomial(coef), poles)

    def common_numerators(self, other):
        "Polynomials (p, q) with self / other == p / q, over the joint poles."
        poles = _merge_poles(self.poles, other.poles)
        return (self._lifted(poles), other._lifted(poles))

    def right_poles(self):
        "Poles with positive real part."
        return [pole for (pole, mult) in self.poles if pole.real > 0]

    def scaled(self, factor):
        "Return the transform of s -> self(factor * s)."
        if factor <= 0:
            raise DomainError("Scale factor must be positive")
        coef = self.numerator.coef * factor ** np.arange(len(self.numerator.coef))
        coef = coef / factor ** self.order
        return RationalTransform(Polynomial(coef),
                                 [(pole / factor, mult) for (pole, mult) in self.poles])

    def _differentiate(self):
        if not self.poles:
            return RationalTransform(self.numerator.deriv(), ())
        linear = Polynomial([1.0 + 0j])
        for (pole, mult) in self.poles:
            linear = linear * _linear(pole)
        correction = Polynomial([0j])
        for (i, (pole, mult)) in enumerate(self.poles):
            others = Polynomial([1.0 + 0j])
            for (j, (q, m)) in enumerate(self.poles):
                if j != i:
                    others = others * _linear(q)
            correction = correction + mult * others
        numerator = self.numerator.deriv() * linear - self.numerator * correction
        return RationalTransform(numerator, [(p, m + 1) for (p, m) in self.poles])

    def derivative(self, k=1):
        if k < 0 or k > MAX_DERIVATIVE:
            raise DomainError("Derivative order {0} out of range".format(k))
        while len(self._derivatives) <= k:
            self._derivatives.append(self._derivatives[-1]._differentiate())
        return self._derivatives[k]

    def __repr__(self):
        return "<RationalTransform degree {0}/{1}>".format(
            self.numerator.degree(), self.order)


class ExpPolynomial:
    "Finite sum of c * y**j * exp(-a*y) terms, keyed by (j, a)."
    def __init__(self, terms=None):
        self.terms = {}
        for (key, c) in (terms or {}).items():
            if c != 0:
                self.terms[key] = self.terms.get(key, 0.0) + c

    def __add__(self, other):
        result = dict(self.terms)
        for (key, c) in other.terms.items():
            result[key] = result.get(key, 0.0) + c
        return ExpPolynomial(result)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return ExpPolynomial({key: c * other for (key, c) in self.terms.items()})
        result = {}
        for ((j1, a1), c1) in self.terms.items():
            for ((j2, a2), c2) in other.terms.items():
                key = (j1 + j2, a1 + a2)
                result[key] = result.get(key, 0.0) + c1 * c2
        return ExpPolynomial(result)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1.0

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        total = np.zeros_like(y)
        for ((j, a), c) in self.terms.items():
            total = total + c * y ** j * np.exp(-a * y)
        return total

    def laplace(self):
        result = RationalTransform.constant(0.0)
        for ((j, a), c) in sorted(self.terms.items()):
            # L[y^j e^{-ay}](s) = j! / (s + a)^(j+1)
            result = result + RationalTransform.partial_fraction(
                c * math.factorial(j), -a, j + 1)
        return result


known_kinds = {}

def distclass(cls):
    assert issubclass(cls, DistributionSpec)
    assert cls.kind is not None
    known_kinds[cls.kind] = cls
    return cls

class DistributionSpec(metaclass=abc.ABCMeta):
    kind = None

    def __init__(self):
        self._lst = None
        self._g = None

    @abc.abstractmethod
    def density_terms(self): pass

    @abc.abstractmethod
    def survival_terms(self): pass

    @abc.abstractmethod
    def _key(self): pass

    def kernel_terms(self):
        "Terms of f(y)(1 - 2F(y)) = f(y)(2(1 - F(y)) - 1)."
        f = self.density_terms()
        return f * self.survival_terms() * 2.0 - f

    @property
    def mean(self):
        return self.moment(1)

    @abc.abstractmethod
    def moment(self, r): pass

    def pdf(self, y):
        return self.density_terms()(_check_time(y))

    def cdf(self, y):
        return 1.0 - self.survival_terms()(_check_time(y))

    @abc.abstractmethod
    def quantile(self, p): pass

    def tail_point(self, mass=1e-13):
        "A time beyond which at most `mass` probability remains."
        return float(self.quantile(1.0 - mass))

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self), self._key()))

    def to_dict(self):
        raise NotImplementedError

def _check_time(y):
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or np.any(np.isnan(y)):
        raise DomainError("Time argument must be nonnegative")
    return y

def _check_probability(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or np.any(p >= 1) or np.any(np.isnan(p)):
        raise DomainError("Probability argument must lie in [0, 1)")
    return p

def _check_rate(rate, name="rate"):
    if isinstance(rate, bool) or not isinstance(rate, (int, float)):
        raise DomainError("{0} must be a number".format(name))
    if not rate > 0 or math.isinf(rate):
        raise DomainError("{0} must be positive and finite: {1!r}".format(name, rate))
    return float(rate)

@distclass
class Exponential(DistributionSpec):
    kind = "exponential"

    def __init__(self, rate):
        super().__init__()
        self.rate = _check_rate(rate)

    def _key(self):
        return (self.rate,)

    def density_terms(self):
        return ExpPolynomial({(0, self.rate): self.rate})

    def survival_terms(self):
        return ExpPolynomial({(0, self.rate): 1.0})

    def moment(self, r):
        return math.factorial(r) / self.rate ** r

    def cdf(self, y):
        return -np.expm1(-self.rate * _check_time(y))

    def quantile(self, p):
        return -np.log1p(-_check_probability(p)) / self.rate

    def to_dict(self):
        return {"kind": self.kind, "rate": self.rate}

    def __repr__(self):
        return "Exponential(rate={0!r})".format(self.rate)

@distclass
class Erlang(DistributionSpec):
    kind = "erlang"

    def __init__(self, shape, rate):
        super().__init__()
        if isinstance(shape, bool) or not isinstance(shape, int) or shape < 1:
            raise DomainError("Erlang shape must be a positive integer: {0!r}"
                              .format(shape))
        self.shape = shape
        self.rate = _check_rate(rate)

    def _key(self):
        return (self.shape, self.rate)

    def density_terms(self):
        k, mu = self.shape, self.rate
        return ExpPolynomial({(k - 1, mu): mu ** k / math.factorial(k - 1)})

    def survival_terms(self):
        mu = self.rate
        return ExpPolynomial({(i, mu): mu ** i / math.factorial(i)
                              for i in range(self.shape)})

    def moment(self, r):
        return math.exp(math.lgamma(self.shape + r) - math.lgamma(self.shape)) / self.rate ** r

    def pdf(self, y):
        y = _check_time(y)
        k, mu = self.shape, self.rate
        with np.errstate(divide="ignore"):
            logpdf = k * math.log(mu) + special.xlogy(k - 1, y) - mu * y - math.lgamma(k)
        return np.exp(logpdf)

    def cdf(self, y):
        return special.gammainc(self.shape, self.rate * _check_time(y))

    def quantile(self, p):
        return special.gammaincinv(self.shape, _check_probability(p)) / self.rate

    def to_dict(self):
        return {"kind": self.kind, "shape": self.shape, "rate": self.rate}

    def __repr__(self):
        return "Erlang(shape={0!r}, rate={1!r})".format(self.shape, self.rate)

@distclass
class Hyperexponential(DistributionSpec):
    kind = "hyperexponential"

    def __init__(self, weights, rates):
        super().__init__()
        weights = [float(w) for w in weights]
        if len(weights) == 0 or len(weights) != len(rates):
            raise DomainError("Hyperexponential needs matching, nonempty "
                              "weights and rates")
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-12:
            raise DomainError("Hyperexponential weights must be a probability vector")
        self.weights = tuple(weights)
        self.rates = tuple(_check_rate(r) for r in rates)

    def _key(self):
        return (self.weights, self.rates)

    def density_terms(self):
        return sum((ExpPolynomial({(0, mu): p * mu})
                    for (p, mu) in zip(self.weights, self.rates)), ExpPolynomial())

    def survival_terms(self):
        return sum((ExpPolynomial({(0, mu): p})
                    for (p, mu) in zip(self.weights, self.rates)), ExpPolynomial())

    def moment(self, r):
        return sum(p * math.factorial(r) / mu ** r
                   for (p, mu) in zip(self.weights, self.rates))

    def quantile(self, p, tolerance=1e-12, maxiter=200):
        p = _check_probability(p)
        lo = np.zeros_like(p)
        hi = -np.log1p(-p) / min(self.rates)
        x = np.clip(-np.log1p(-p) * self.mean, lo, hi)
        for _ in range(maxiter):
            err = self.cdf(x) - p
            hi = np.where(err > 0, x, hi)
            lo = np.where(err <= 0, x, lo)
            if np.all(np.abs(err) < tolerance):
                break
            with np.errstate(divide="ignore", invalid="ignore"):
                step = x - err / self.pdf(x)
            inside = (step > lo) & (step < hi)
            x = np.where(inside, step, 0.5 * (lo + hi))
        return x

    def to_dict(self):
        return {"kind": self.kind, "weights": list(self.weights),
                "rates": list(self.rates)}

    def __repr__(self):
        return "Hyperexponential(weights={0!r}, rates={1!r})".format(
            list(self.weights), list(self.rates))


def build(kind, **params):
    "Construct a distribution spec from its kind name and parameters."
    try:
        cls = known_kinds[kind.lower()]
    except KeyError:
        raise DomainError("Unknown distribution kind: {0!r}".format(kind))
    return cls(**params)

def lst(d):
    "Exact Laplace-Stieltjes transform of D."
    if d._lst is None:
        d._lst = d.density_terms().laplace()
    return d._lst

def g_transform(d):
    "Exact Laplace transform of f(y)(1 - 2F(y)) for D."
    if d._g is None:
        d._g = d.kernel_terms().laplace()
    return d._g

def transform_derivative(t, k):
    return t.derivative(k)

def moment(d, r):
    return d.moment(r)

def pdf(d, y):
    return d.pdf(y)

def cdf(d, y):
    return d.cdf(y)

def quantile(d, p):
    return d.quantile(p)
