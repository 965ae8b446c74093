#
# roots.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Characteristic roots with positive real part.

Roots come from the companion-matrix eigenvalues of the cleared
polynomial (numpy's Polynomial.roots), are polished by one Newton step on
the evaluable characteristic function and their number is checked
against the argument principle on a right half-disc.
"""

import logging

import numpy as np
from numpy.polynomial import Polynomial

from straddle.errors import *
from straddle.distlib import RationalTransform, lst, g_transform

log = logging.getLogger(__name__)

ROOT_THRESHOLD = 1e-9
DEDUP_TOLERANCE = 1e-8
RESIDUAL_TOLERANCE = 1e-8
CONJUGATE_TOLERANCE = 1e-9
CONTOUR_CLEARANCE = 1e-6
CONTOUR_RETRIES = 3

_S = RationalTransform([0.0, 1.0])

class CharacteristicFunction:
    """An evaluable characteristic function with its cleared polynomial.

    polynomial(s) == function(s) * cofactor(s) identically.
    """
    def __init__(self, function, polynomial, cofactor, scale=1.0, radius=None):
        self.function = function
        self.polynomial = _trim(polynomial)
        self.cofactor = cofactor
        self.scale = float(scale)
        self.radius = radius if radius is not None else 20 * self.scale

    def __call__(self, s):
        return self.function(s)

    def deflated(self):
        "The polynomial with its structural root at zero divided out."
        coef = self.polynomial.coef
        if abs(coef[0]) <= 1e-12 * np.max(np.abs(coef)):
            return Polynomial(coef[1:])
        return self.polynomial

    def fujiwara_bound(self):
        "2 max |a_(n-k) / a_n|**(1/k): every root lies within it."
        coef = self.deflated().coef
        n = len(coef) - 1
        if n < 1:
            return 0.0
        ratios = np.abs(coef[:-1] / coef[-1])[::-1]
        ratios[-1] /= 2
        return 2.0 * float(np.max(ratios ** (1.0 / np.arange(1, n + 1))))

def _trim(polynomial):
    coef = np.asarray(polynomial.coef, dtype=complex)
    top = np.max(np.abs(coef)) if len(coef) else 0.0
    while len(coef) > 1 and abs(coef[-1]) <= 1e-14 * top:
        coef = coef[:-1]
    return Polynomial(coef)

def _factor(rate, power):
    "(rate - s)**power as a pole-free transform."
    return (RationalTransform([rate, -1.0])) ** power

def _from_bracket(bracket, cleared, scale, radius):
    """Characteristic function bracket * prod((b - s)^m) over the kernel
    poles listed in CLEARED, which are exactly the poles of BRACKET in the
    right half-plane."""
    factor = RationalTransform.constant(1.0)
    cofactor = Polynomial([1.0 + 0j])
    sign = 1
    for (b, m) in cleared:
        factor = factor * _factor(b, m)
        sign *= (-1) ** m
    for (pole, mult) in bracket.poles:
        if not any(abs(pole - b) <= 1e-12 * max(1.0, abs(b)) for (b, m) in cleared):
            cofactor = cofactor * Polynomial([-pole, 1.0]) ** mult
    return CharacteristicFunction(bracket * factor, bracket.numerator,
                                  cofactor * sign, scale=scale, radius=radius)

class RootSet:
    def __init__(self, roots, multiplicities, verified_count, residuals):
        self.roots = list(roots)
        self.multiplicities = list(multiplicities)
        self.verified_count = verified_count
        self.residuals = list(residuals)

    @property
    def count(self):
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, index):
        return self.roots[index]

    def __repr__(self):
        return "RootSet({0!r})".format(self.roots)

def mg1_characteristic(model):
    "D(s) = (2l - s)(l - s) - l(2l - s)phi(s) + theta s l g*(s)."
    model.check_stable()
    lam = model.rate
    phi = lst(model.service)
    g = g_transform(model.service)
    D = (_factor(2 * lam, 1) * _factor(lam, 1)
         - lam * _factor(2 * lam, 1) * phi
         + model.theta * lam * _S * g)
    return CharacteristicFunction(D, D.numerator, D.denominator,
                                  scale=lam, radius=20 * lam)

def erlang_characteristic(model):
    """Bracket of the Erlang-arrival functional equation, cleared by
    (l - s)^n (2l - s)^(2n-1).  With theta = 0 the (2l - s) block is
    absent and only (l - s)^n is cleared."""
    model.check_stable()
    lam, n = model.rate, model.stages
    cleared = [(lam, n)]
    if model.theta != 0:
        cleared.append((2 * lam, 2 * n - 1))
    return _from_bracket(model.kernel().bracket(), cleared,
                         scale=lam, radius=10 * (n + 1) * lam)

def kernel_characteristic(model):
    "Bracket of any family, cleared by its right half-plane poles."
    model.check_stable()
    kernel = model.kernel()
    bracket = kernel.bracket()
    cleared = [(b, bracket.multiplicity(b)) for b in kernel.rates
               if bracket.multiplicity(b) > 0]
    return _from_bracket(bracket, cleared, scale=model.rate,
                         radius=10 * (model.stages + 1) * model.rate)


def winding_count(f, radius, epsilon=ROOT_THRESHOLD, initial=1024,
                  max_points=400000, clearance=CONTOUR_CLEARANCE):
    """Number of zeros of F inside the half-disc bounded by Re(s) = epsilon
    and the right semicircle of RADIUS, by the argument principle.

    F must accept numpy arrays of complex points.  A step is refined until
    both the phase change and |F'/F| times its length stay below pi/4, so
    no whole turn can hide between two samples."""
    def contour(t):
        t = np.asarray(t)
        arc = epsilon + radius * np.exp(1j * (-np.pi / 2 + np.pi * np.minimum(t, 1.0)))
        line = epsilon + 1j * radius * (1 - 2 * (t - 1.0))
        return np.where(t <= 1.0, arc, line)

    if isinstance(f, Polynomial):
        derivative = f.deriv()
    else:
        h = 1e-7 * max(1.0, radius)

        def derivative(z):
            return (np.asarray(f(z + h), dtype=complex)
                    - np.asarray(f(z - h), dtype=complex)) / (2 * h)

    t = np.linspace(0.0, 2.0, 2 * initial + 1)
    while True:
        z = contour(t)
        w = np.asarray(f(z), dtype=complex)
        if np.any(w == 0) or not np.all(np.isfinite(w)):
            raise ContourTooClose("Zero on the contour of radius {0:g}".format(radius))
        slope = np.asarray(derivative(z), dtype=complex)
        logstep = np.abs(slope / w)
        dphi = np.angle(w[1:] / w[:-1])
        turn = np.maximum(logstep[1:], logstep[:-1]) * np.abs(np.diff(z))
        coarse = (np.abs(dphi) >= np.pi / 4) | (turn >= np.pi / 4)
        if not np.any(coarse):
            break
        if len(t) > max_points:
            raise ContourTooClose("Phase did not resolve on radius {0:g}".format(radius))
        midpoints = 0.5 * (t[:-1] + t[1:])[coarse]
        t = np.sort(np.concatenate((t, midpoints)))

    distance = 1.0 / np.max(logstep)
    if distance < clearance:
        raise ContourTooClose("A zero lies within {0:g} of the contour of radius {1:g}"
                              .format(distance, radius))
    return int(round(np.sum(dphi) / (2 * np.pi)))

def contour_radius(cf, candidates=()):
    """The family radius, widened to enclose the candidate roots and
    capped just above the Fujiwara bound."""
    reach = max((abs(r) for r in candidates), default=0.0)
    bound = cf.fujiwara_bound()
    radius = max(cf.radius, 1.5 * reach)
    if bound > 0:
        radius = min(radius, 1.01 * bound)
    return max(radius, 1.01 * reach, ROOT_THRESHOLD * 1e3)

def _verified_winding(cf, candidates=()):
    poly = cf.deflated()
    radius = contour_radius(cf, candidates)
    for attempt in range(CONTOUR_RETRIES + 1):
        try:
            return winding_count(poly, radius)
        except ContourTooClose:
            if attempt == CONTOUR_RETRIES:
                raise
            log.info("contour too close at radius %g; retrying at %g",
                     radius, 2 * radius)
            radius *= 2

def _polish(cf, root):
    function = cf.function
    if isinstance(function, RationalTransform):
        value = function(root)
        slope = function.derivative(1)(root)
    else:
        value = cf.polynomial(root) / cf.cofactor(root)
        slope = None
    if slope is None or slope == 0 or not np.isfinite(slope):
        poly = cf.polynomial
        value, slope = poly(root), poly.deriv()(root)
        if slope == 0:
            return root, abs(value)
    polished = root - value / slope
    if isinstance(function, RationalTransform):
        residual = abs(function(polished)) / (1 + abs(function.derivative(1)(polished)))
    else:
        poly = cf.polynomial
        residual = abs(poly(polished)) / (1 + abs(poly.deriv()(polished)))
    return polished, residual

def find_positive_roots(cf, expected):
    raw = cf.deflated().roots()
    candidates = [complex(r) for r in raw if r.real > ROOT_THRESHOLD]
    polished = []
    for r in candidates:
        (root, residual) = _polish(cf, r)
        if abs(root - r) > 1e-3 * max(1.0, abs(r)):
            # Newton wandered off; keep the eigenvalue.
            root = r
            residual = abs(cf.polynomial(r)) / (1 + abs(cf.polynomial.deriv()(r)))
        polished.append((root, residual))

    roots, mults, residuals = [], [], []
    for (root, residual) in polished:
        for (i, known) in enumerate(roots):
            if abs(known - root) <= DEDUP_TOLERANCE * max(1.0, abs(known)):
                mults[i] += 1
                residuals[i] = max(residuals[i], residual)
                break
        else:
            roots.append(root)
            mults.append(1)
            residuals.append(residual)

    roots, mults, residuals = _close_under_conjugation(roots, mults, residuals)
    found = sum(mults)
    winding = _verified_winding(cf, candidates)
    log.info("%d roots with positive real part, winding count %d, expected %d",
             found, winding, expected)
    if found != expected or winding != expected:
        raise RootCountMismatch(found, winding, expected)
    worst = max(residuals) if residuals else 0.0
    if worst > RESIDUAL_TOLERANCE:
        raise NumericalError("Root residual {0:.3g} exceeds tolerance".format(worst))
    return RootSet(roots, mults, winding, residuals)

def _close_under_conjugation(roots, mults, residuals):
    real, upper, lower = [], [], []
    for entry in zip(roots, mults, residuals):
        root = entry[0]
        tolerance = CONJUGATE_TOLERANCE * max(1.0, abs(root))
        if abs(root.imag) <= tolerance:
            real.append((complex(root.real, 0.0),) + entry[1:])
        elif root.imag > 0:
            upper.append(entry)
        else:
            lower.append(entry)
    for (root, mult, residual) in upper:
        matches = [e for e in lower if abs(e[0] - root.conjugate()) <= 1e-6 * max(1.0, abs(root))]
        if not matches:
            raise NumericalError("Root {0} has no conjugate partner".format(root))
    if len(upper) != len(lower):
        raise NumericalError("Roots are not closed under conjugation")
    result = sorted(real, key=lambda e: e[0].real)
    for (root, mult, residual) in sorted(upper, key=lambda e: (e[0].real, e[0].imag)):
        result.append((root, mult, residual))
        result.append((root.conjugate(), mult, residual))
    return ([e[0] for e in result], [e[1] for e in result], [e[2] for e in result])

def find_tau1(model):
    "The unique root of the M/G/1 characteristic function with Re > 0."
    roots = find_positive_roots(mg1_characteristic(model), 1)
    return roots[0]
