#
# solver_prop.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Interarrival times proportional to the service time.

Here A = Omega S + J with Omega discrete on (0, 1) and (S, J) an FGM pair,
J ~ Exp(l).  Then S - A = (1 - Omega) S - J, so every transform is a
mixture over the atoms of M/G/1 transforms with the service time scaled
by 1 - a.
"""

import logging

from straddle.errors import *
from straddle.distlib import RationalTransform, lst, g_transform
from straddle.models import Proportional
from straddle.solver_mg1 import (scaled_splus_transform, transform_evaluator,
                                 check_probability)
from straddle.solver_erlang import solve_kernel_waiting, kernel_overlap_laws
from straddle import roots

log = logging.getLogger(__name__)

def _check_prop(model):
    if not isinstance(model, Proportional):
        raise CapabilityError("Expected a proportional model, got {0}"
                              .format(model.family))
    model.check_stable()

def splus_evaluator_prop(model):
    lam, theta = model.rate, model.theta
    phi = lst(model.service)
    g = g_transform(model.service)
    total = RationalTransform.constant(0.0)
    for (a, p) in model.atoms:
        total = total + p * scaled_splus_transform(lam, theta, phi.scaled(1 - a),
                                                   g.scaled(1 - a))
    return transform_evaluator(total.reduced(), lam)

def splus_lst_prop(model, s):
    "E exp(-s[S - A]^+) as the atom mixture."
    _check_prop(model)
    return splus_evaluator_prop(model)(s)

def solve_waiting_prop(model):
    _check_prop(model)
    cf = roots.kernel_characteristic(model)
    rootset = roots.find_positive_roots(cf, model.expected_roots())
    if model.theta == 0:
        log.info("proportional theta=0: single unknown w*(l)")
    return solve_kernel_waiting(model, rootset)

def prob_s_gt_a_prop(model):
    _check_prop(model)
    lam, theta = model.rate, model.theta
    phi = lst(model.service)
    g = g_transform(model.service)
    total = 0.0
    for (a, p) in model.atoms:
        c = 1 - a
        total += p * (1 - phi(c * lam) + theta * (g(c * lam) - g(2 * c * lam))).real
    return check_probability(total)

def overlap_laws_prop(model, solution=None):
    "Maximum and minimum overlap laws, in that order."
    if solution is None:
        solution = solve_waiting_prop(model)
    return kernel_overlap_laws(model, solution, splus_evaluator_prop(model))
