#
# copula.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Farlie-Gumbel-Morgenstern copula primitives."""

import numbers

import numpy as np

from straddle.errors import *

INDEPENDENCE_THRESHOLD = 1e-12

def check_theta(theta):
    if isinstance(theta, bool) or not isinstance(theta, numbers.Real):
        raise DomainError("theta must be a real number: {0!r}".format(theta))
    theta = float(theta)
    if not -1.0 <= theta <= 1.0:
        raise DomainError("theta must lie in [-1, 1]: {0!r}".format(theta))
    return theta

def _check_unit(u):
    (u1, u2) = u
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    for v in (u1, u2):
        if np.any(v < 0) or np.any(v > 1) or np.any(np.isnan(v)):
            raise DomainError("Copula arguments must lie in [0, 1]")
    return u1, u2

def fgm_cdf(u, theta):
    theta = check_theta(theta)
    (u1, u2) = _check_unit(u)
    return u1 * u2 + theta * u1 * u2 * (1 - u1) * (1 - u2)

def fgm_density(u, theta):
    theta = check_theta(theta)
    (u1, u2) = _check_unit(u)
    return 1 + theta * (1 - 2 * u1) * (1 - 2 * u2)

def conditional_inverse(u1, v, theta):
    """Solve (1+b)u2 - b u2**2 = v for u2 in [0, 1], b = theta(1 - 2 u1)."""
    u1 = np.asarray(u1, dtype=float)
    v = np.asarray(v, dtype=float)
    b = theta * (1 - 2 * u1)
    root = 2 * v / ((1 + b) + np.sqrt((1 + b) ** 2 - 4 * b * v))
    return np.where(np.abs(b) < INDEPENDENCE_THRESHOLD, v, root)

def sample_pairs(theta, rng, size):
    "Draw SIZE pairs from the FGM copula using the generator RNG."
    theta = check_theta(theta)
    u1 = rng.random(size)
    v = rng.random(size)
    return u1, conditional_inverse(u1, v, theta)

def sample_pair(theta, rng):
    (u1, u2) = sample_pairs(theta, rng, 1)
    return float(u1[0]), float(u2[0])

def fgm_joint_density(y, x, first, second, theta):
    """Joint density of (X, Y) with marginals FIRST, SECOND glued by the
    FGM copula: f1 f2 + theta g1 g2 with g = f (1 - 2F)."""
    theta = check_theta(theta)
    f1 = first.pdf(y)
    f2 = second.pdf(x)
    if theta == 0:
        return f1 * f2
    g1 = f1 * (1 - 2 * first.cdf(y))
    g2 = f2 * (2 * (1 - second.cdf(x)) - 1)
    return f1 * f2 + theta * g1 * g2

def joint_density_sa(y, x, model):
    "Joint density of (S, A) at service time Y and interarrival time X."
    arrival = getattr(model, "arrival", None)
    if arrival is None:
        raise CapabilityError("{0} model has no FGM joint density for (S, A)"
                              .format(model.family))
    return fgm_joint_density(y, x, model.service, arrival, model.theta)

def rank_correlations(theta):
    "Return (Kendall tau, Spearman rho) of the FGM copula."
    theta = check_theta(theta)
    return 2 * theta / 9, theta / 3
