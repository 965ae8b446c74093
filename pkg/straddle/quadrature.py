#
# quadrature.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Independent numerical oracles for the closed forms.

Two-dimensional integrals are computed as nested adaptive Gauss-Kronrod
quadratures (scipy.integrate.quad) over [0, T]^2, where T leaves a tail
mass below 1e-13 for each marginal.
"""

import math

from scipy import integrate

from straddle.errors import *
from straddle.copula import fgm_joint_density

EPSABS = 1e-12
EPSREL = 1e-10
LIMIT = 200
TAIL_MASS = 1e-13

def _quad(f, a, b):
    if b <= a:
        return 0.0
    (value, error) = integrate.quad(f, a, b, epsabs=EPSABS, epsrel=EPSREL,
                                    limit=LIMIT)
    return value

def _real_argument(s):
    if isinstance(s, complex):
        if s.imag != 0:
            raise DomainError("Quadrature oracles take real arguments")
        s = s.real
    return float(s)

def _density(service, partner, theta):
    def density(y, x):
        return float(fgm_joint_density(y, x, service, partner, theta))
    return density

def splus_quadrature(service, partner, theta, s, scale=1.0):
    "E exp(-s[scale S - X]^+) for the FGM pair (S, X)."
    s = _real_argument(s)
    density = _density(service, partner, theta)
    ys = service.tail_point(TAIL_MASS)
    xs = partner.tail_point(TAIL_MASS)

    def inner(y):
        z = scale * y
        cut = min(z, xs)
        below = _quad(lambda x: math.exp(-s * (z - x)) * density(y, x), 0.0, cut)
        above = _quad(lambda x: density(y, x), cut, xs)
        return below + above
    return _quad(inner, 0.0, ys)

def prob_s_gt_a_quadrature(service, partner, theta, scale=1.0):
    "P(scale S > X) for the FGM pair (S, X)."
    density = _density(service, partner, theta)
    ys = service.tail_point(TAIL_MASS)
    xs = partner.tail_point(TAIL_MASS)
    return _quad(lambda y: _quad(lambda x: density(y, x), 0.0, min(scale * y, xs)),
                 0.0, ys)

def positive_part_quadrature(service, partner, theta, s, scale=1.0):
    "E exp(-s(scale S - X)) 1(scale S > X)."
    s = _real_argument(s)
    density = _density(service, partner, theta)
    ys = service.tail_point(TAIL_MASS)
    xs = partner.tail_point(TAIL_MASS)

    def inner(y):
        z = scale * y
        return _quad(lambda x: math.exp(-s * (z - x)) * density(y, x), 0.0, min(z, xs))
    return _quad(inner, 0.0, ys)

def mass_quadrature(service, partner, theta):
    density = _density(service, partner, theta)
    ys = service.tail_point(TAIL_MASS)
    xs = partner.tail_point(TAIL_MASS)
    return _quad(lambda y: _quad(lambda x: density(y, x), 0.0, xs), 0.0, ys)

def marginal_quadrature(service, partner, theta, x):
    "Integral of the joint density over the service time at fixed X."
    density = _density(service, partner, theta)
    return _quad(lambda y: density(y, x), 0.0, service.tail_point(TAIL_MASS))

def g_quadrature(service, s):
    "Integral of exp(-s y) f(y)(1 - 2F(y))."
    s = _real_argument(s)

    def integrand(y):
        return math.exp(-s * y) * float(service.pdf(y)) * (1 - 2 * float(service.cdf(y)))
    return _quad(integrand, 0.0, service.tail_point(TAIL_MASS))

def model_splus_quadrature(model, s):
    "E exp(-s[S - A]^+) for any model family."
    atoms = getattr(model, "atoms", None)
    if atoms is None:
        return splus_quadrature(model.service, model.partner, model.theta, s)
    return sum(p * splus_quadrature(model.service, model.partner, model.theta,
                                    s, scale=1 - a)
               for (a, p) in atoms)

def model_prob_s_gt_a_quadrature(model):
    atoms = getattr(model, "atoms", None)
    if atoms is None:
        return prob_s_gt_a_quadrature(model.service, model.partner, model.theta)
    return sum(p * prob_s_gt_a_quadrature(model.service, model.partner,
                                          model.theta, scale=1 - a)
               for (a, p) in atoms)
