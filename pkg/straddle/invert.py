#
# invert.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Numerical inversion of Laplace-Stieltjes transforms into CDFs.

The CDF F of a nonnegative random variable has Laplace transform
lst(s)/s.  It is recovered with the Euler algorithm: a Bromwich integral
discretised by the trapezoidal rule on Re(s) = M ln(10) / (3t), with the
alternating tail accelerated by binomial averaging of the last M partial
sums.  Only points with positive real part are ever evaluated.
"""

import logging
import math
from warnings import warn

import numpy as np
from scipy import special

from straddle.errors import *

log = logging.getLogger(__name__)

EULER_TERMS = 16
ATOM_POINT = 1e6
RIPPLE_TOLERANCE = 1e-4
CLIP_WARNING = 1e-3

class CdfGrid:
    def __init__(self, t, values, atom, clip=0.0):
        self.t = np.asarray(t, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.atom = float(atom)
        self.clip = float(clip)

    def __len__(self):
        return len(self.t)

    def __iter__(self):
        return iter(zip(self.t, self.values))

    def sup_distance(self, other):
        "Largest absolute difference to OTHER, a grid or an array on the same t."
        values = other.values if isinstance(other, CdfGrid) else np.asarray(other)
        return float(np.max(np.abs(self.values - values)))

    def __repr__(self):
        return "<CdfGrid {0} points, atom {1:.6g}>".format(len(self.t), self.atom)

def euler_weights(terms=EULER_TERMS):
    "Nodes beta_k and weights eta_k, k = 0..2M, for M = TERMS."
    m = terms
    xi = np.zeros(2 * m + 1)
    xi[0] = 0.5
    xi[1:m + 1] = 1.0
    xi[2 * m] = 2.0 ** -m
    for k in range(1, m):
        xi[2 * m - k] = xi[2 * m - k + 1] + 2.0 ** -m * special.comb(m, k, exact=True)
    k = np.arange(2 * m + 1)
    eta = (-1.0) ** k * xi
    beta = m * math.log(10) / 3 + 1j * math.pi * k
    return beta, eta, 10 ** (m / 3)

def _evaluate(lst, s):
    try:
        value = complex(lst(s))
    except (ArithmeticError, ValueError, Error) as e:
        raise EvaluationFailure("Transform failed at s={0}: {1}".format(s, e))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise EvaluationFailure("Transform is not finite at s={0}".format(s))
    return value

def invert_point(transform, t, terms=EULER_TERMS):
    "Invert the ordinary Laplace transform TRANSFORM at a single t > 0."
    (beta, eta, scale) = euler_weights(terms)
    total = 0.0
    for (b, e) in zip(beta, eta):
        total += e * _evaluate(transform, b / t).real
    return scale / t * total

def invert_cdf(lst, t_grid, terms=EULER_TERMS, scale=1.0):
    """CDF on T_GRID of the nonnegative random variable with
    Laplace-Stieltjes transform LST.  SCALE sets the large-s point used for
    the atom at zero."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or np.any(t < 0) or np.any(np.diff(t) <= 0):
        raise DomainError("Inversion grid must be increasing and nonnegative")

    def transform(s):
        return lst(s) / s
    atom = _evaluate(lst, ATOM_POINT * scale).real
    raw = np.array([atom if x == 0 else invert_point(transform, x, terms)
                    for x in t])
    if np.any(raw < -RIPPLE_TOLERANCE) or np.any(raw > 1 + RIPPLE_TOLERANCE):
        log.info("inversion values outside [0, 1] before clipping: min %.3g max %.3g",
                 np.min(raw), np.max(raw))
    values = np.maximum.accumulate(np.clip(raw, 0.0, 1.0))
    clip = float(np.max(np.abs(values - raw))) if len(raw) else 0.0
    log.info("inversion clip magnitude %.3g over %d points", clip, len(t))
    if clip > CLIP_WARNING:
        warn("Inversion clip magnitude {0:.3g}".format(clip), InversionClipWarning)
    return CdfGrid(t, values, atom, clip)

def default_grid(mean_max, mean_service, points=200, t_max=None):
    """Evenly spaced grid up to T_MAX, by default 20 times the larger of
    the two means."""
    if t_max is None:
        t_max = 20 * max(mean_max, mean_service)
    return np.linspace(0.0, t_max, points + 1)
