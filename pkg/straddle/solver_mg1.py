#
# solver_mg1.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""M/G/1 queue whose service and interarrival times are FGM-dependent.

The waiting-time transform is

  w*(s) = s [(theta g*(l) - phi(l))(2l - s) w*(l)
             - theta g*(2l)(l - s) w*(2l)] / D(s)

with D the characteristic function of roots.mg1_characteristic.  The two
boundary values follow from w*(0) = 1 and from the numerator vanishing at
the single root tau1 of D in the right half-plane.
"""

import logging
from warnings import warn

import numpy as np

from straddle.errors import *
from straddle.distlib import RationalTransform, lst, g_transform
from straddle.models import MG1
from straddle.numerics import (RemovableEvaluator, richardson_derivative,
                               derivative_step, real_if_close)
from straddle import roots

log = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
CLOSED_FORM_TOLERANCE = 1e-9
RANGE_SLACK = 1e-9

WAITING = "waiting"
MAX_OVERLAP = "max_overlap"
MIN_OVERLAP = "min_overlap"
SPLUS = "splus"

class WaitingSolution:
    "Solved boundary unknowns and an evaluator for the waiting-time LST."
    def __init__(self, model, roots, boundary, evaluator, diagnostics):
        self.model = model
        self.roots = roots
        self.boundary = boundary
        self.evaluator = evaluator
        self.diagnostics = diagnostics
        self._mean = None

    @property
    def tau1(self):
        if self.roots is None or len(self.roots) == 0:
            return None
        return self.roots[0]

    def __call__(self, s):
        return self.evaluator(s)

    @property
    def mean(self):
        if self._mean is None:
            self._mean = waiting_mean(self)
        return self._mean

class OverlapLaw:
    def __init__(self, kind, evaluator, mean):
        self.kind = kind
        self.evaluator = evaluator
        self.mean = mean

    def __call__(self, s):
        return self.evaluator(s)

    def __repr__(self):
        return "<OverlapLaw {0} mean={1:.12g}>".format(self.kind, self.mean)

def lst_mean(evaluator, rate):
    "-d/ds of EVALUATOR at 0."
    return -richardson_derivative(evaluator, derivative_step(rate)).real

def _check_mg1(model):
    if not isinstance(model, MG1):
        raise CapabilityError("Expected an mg1 model, got {0}".format(model.family))
    model.check_stable()

def splus_transform(model):
    return scaled_splus_transform(model.rate, model.theta,
                                  lst(model.service), g_transform(model.service))

def scaled_splus_transform(lam, theta, phi, g):
    """E exp(-s[S - J]^+) for J ~ Exp(lam) given the transforms of S.

    The poles at lam and 2 lam cancel and are divided out."""
    (phi1, g1, g2) = (phi(lam), g(lam), g(2 * lam))
    s = RationalTransform([0.0, 1.0])
    # 1/(lam - s) and 1/(2 lam - s)
    inv1 = RationalTransform.partial_fraction(-1.0, lam, 1)
    inv2 = RationalTransform.partial_fraction(-1.0, 2 * lam, 1)
    total = (lam * inv1 * phi - phi1 * s * inv1
             + theta * s * (g1 * inv1 - lam * g * inv2 * inv1 - g2 * inv2))
    return total.reduced()

def transform_evaluator(transform, scale):
    "Evaluator for a transform whose right half-plane poles are removable."
    return RemovableEvaluator(transform, transform.right_poles(), scale)

def splus_evaluator(model):
    return transform_evaluator(splus_transform(model), model.rate)

def splus_lst(model, s):
    "E exp(-s[S - A]^+)."
    _check_mg1(model)
    return splus_evaluator(model)(s)

def solve_waiting(model):
    _check_mg1(model)
    lam, theta, rho = model.rate, model.theta, model.rho
    phi = lst(model.service)
    g = g_transform(model.service)
    c1 = (theta * g(lam) - phi(lam)).real
    g2 = g(2 * lam).real

    cf = roots.mg1_characteristic(model)
    rootset = roots.find_positive_roots(cf, 1)
    tau = rootset[0]

    if theta == 0:
        w1 = (1 - rho) / phi(lam).real

        def formula(s):
            return (1 - rho) * s / (s - lam * (1 - phi(s)))
        evaluator = RemovableEvaluator(formula, [0.0], lam)
        w2 = evaluator(2 * lam).real
        residuals = [abs(2 * c1 * w1 + 2 * (1 - rho))]
        condition = 1.0
    else:
        matrix = np.array([[2 * c1, -theta * g2],
                           [(2 * lam - tau) * c1, -theta * (lam - tau) * g2]],
                          dtype=complex)
        rhs = np.array([-2 * (1 - rho), 0.0], dtype=complex)
        try:
            solution = np.linalg.solve(matrix, rhs)
        except np.linalg.LinAlgError:
            raise SingularSystem("Boundary system is singular at theta={0!r}"
                                 .format(theta))
        condition = float(np.linalg.cond(matrix))
        residuals = list(np.abs(matrix @ solution - rhs))
        closed = (2 * (1 - rho) * (lam - tau) / (tau * c1),
                  2 * (1 - rho) * (2 * lam - tau) / (tau * theta * g2))
        for (value, expected) in zip(solution, closed):
            if abs(value - expected) > CLOSED_FORM_TOLERANCE * max(1.0, abs(expected)):
                raise NumericalError("Boundary solve {0} disagrees with closed form {1}"
                                     .format(value, expected))
        (w1, w2) = (real_if_close(solution[0]), real_if_close(solution[1]))
        D = cf.function

        def formula(s):
            return s * (c1 * (2 * lam - s) * w1
                        - theta * g2 * (lam - s) * w2) / D(s)
        evaluator = RemovableEvaluator(formula, [0.0, tau], lam)

    if condition > CONDITION_LIMIT:
        warn("Boundary system condition number {0:.3g}".format(condition),
             IllConditionedWarning)
    log.info("mg1 theta=%g: tau1=%s w(l)=%.12g w(2l)=%.12g",
             theta, tau, w1.real if isinstance(w1, complex) else w1,
             w2.real if isinstance(w2, complex) else w2)
    diagnostics = {"residuals": [float(r) for r in residuals],
                   "condition": condition,
                   "root_residuals": rootset.residuals}
    return WaitingSolution(model, rootset, {"w_lambda": w1, "w_2lambda": w2},
                           evaluator, diagnostics)

def waiting_mean(solution):
    return lst_mean(solution.evaluator, solution.model.rate)

def splus_mean(model):
    "E[(S - A)^+]."
    return lst_mean(splus_evaluator(model), model.rate)

def max_overlap(model, solution=None):
    if solution is None:
        solution = solve_waiting(model)
    splus = splus_evaluator(model)

    def evaluator(s):
        return solution(s) * splus(s)
    return OverlapLaw(MAX_OVERLAP, evaluator, solution.mean + splus_mean(model))

def min_overlap_factor(model):
    "r(s) = 1 + P(S > A) - E(exp(-s(S - A)) 1(S > A))."
    return transform_evaluator(2 - splus_transform(model), model.rate)

def min_overlap(model, solution=None):
    if solution is None:
        solution = solve_waiting(model)
    r = min_overlap_factor(model)
    if abs(r(0.0) - 1) > 1e-9:
        raise NumericalError("Minimum overlap factor r(0) = {0}".format(r(0.0)))

    def evaluator(s):
        return solution(s) * r(s)
    return OverlapLaw(MIN_OVERLAP, evaluator, lst_mean(evaluator, model.rate))

def check_probability(value):
    if not -RANGE_SLACK <= value <= 1 + RANGE_SLACK:
        raise RangeViolation("Probability {0!r} outside [0, 1]".format(value))
    return min(1.0, max(0.0, value))

def prob_s_gt_a(model):
    _check_mg1(model)
    lam, theta = model.rate, model.theta
    phi = lst(model.service)
    g = g_transform(model.service)
    value = (1 - phi(lam) + theta * (g(lam) - g(2 * lam))).real
    return check_probability(value)

def mean_max_formula_diagnostic(model, solution=None):
    """The closed-form mean maximum overlap with its G term taken as
    printed, beside the derivative-based value."""
    _check_mg1(model)
    if solution is None:
        solution = solve_waiting(model)
    lam, theta, rho = model.rate, model.theta, model.rho
    phi = lst(model.service)
    g = g_transform(model.service)
    es = model.service.moment(1)
    es2 = model.service.moment(2)
    gp0 = g.derivative(1)(0.0).real
    (phi1, g1, g2) = (phi(lam).real, g(lam).real, g(2 * lam).real)
    w1 = complex(solution.boundary["w_lambda"]).real
    w2 = complex(solution.boundary["w_2lambda"]).real
    G = ((g2 * w2 * (1 - rho - lam * theta * gp0 + lam ** 2 * es2)
          + 2 * lam * w1 * (g1 * (theta * gp0 + lam * es2) - theta * gp0 * phi1))
         / (4 * lam * (1 - rho) ** 2)
         + (g2 - 2 * g1) / (2 * lam))
    formula = lam * es2 / (2 * (1 - rho)) + es - (1 - phi1) / lam + theta * G
    derivative = max_overlap(model, solution).mean
    return formula, derivative, abs(formula - derivative)
