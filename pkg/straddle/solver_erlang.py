#
# solver_erlang.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Erlang(n, l) arrivals with FGM-dependent service.

The unknowns are w*^(k)(l), k < n, and w*^(k)(2l), k <= 2n - 2.  Each
root of the bracket with positive real part makes the right-hand side
vanish, which gives 3n - 2 equations; w*(0) = 1 supplies the last one
through the derivatives of both sides at zero.
"""

import logging
from warnings import warn

import numpy as np

from straddle.errors import *
from straddle.distlib import RationalTransform, g_transform
from straddle.models import ErlangArrivals
from straddle.numerics import RemovableEvaluator
from straddle.solver_mg1 import (WaitingSolution, OverlapLaw, lst_mean,
                                 check_probability, transform_evaluator,
                                 CONDITION_LIMIT,
                                 MAX_OVERLAP, MIN_OVERLAP)
from straddle import quadrature
from straddle import roots

log = logging.getLogger(__name__)

# Multiples of the arrival rate, clear of l and 2l.
ORACLE_POINTS = (0.1, 0.5, 1.5, 2.5, 4.0)
ORACLE_TOLERANCE = 1e-6
IMAGINARY_TOLERANCE = 1e-9

class BoundaryVector:
    "Derivatives of the waiting-time LST at the partner's rates."
    def __init__(self, unknowns, values, roots=()):
        self.unknowns = tuple(unknowns)
        self.values = tuple(float(v) for v in values)
        self.roots = tuple(roots)
        self._index = {key: i for (i, key) in enumerate(self.unknowns)}

    def at(self, rate, order):
        return self.values[self._index[(rate, order)]]

    def derivatives(self, rate):
        return [v for ((b, j), v) in zip(self.unknowns, self.values) if b == rate]

    @property
    def rates(self):
        return sorted(set(b for (b, j) in self.unknowns))

    def alternating(self):
        "True when (-1)^k w*^(k) > 0 for every entry."
        return all((-1) ** j * v > 0 for ((b, j), v) in zip(self.unknowns, self.values))

    def to_dict(self):
        result = {}
        for ((b, j), v) in zip(self.unknowns, self.values):
            result.setdefault("{0:.12g}".format(b), []).append(v)
        return result

    def __repr__(self):
        return "BoundaryVector({0!r})".format(dict(zip(self.unknowns, self.values)))

class LinearSystem:
    def __init__(self, matrix, rhs, provenance, unknowns):
        self.matrix = np.asarray(matrix, dtype=float)
        self.rhs = np.asarray(rhs, dtype=float)
        self.provenance = list(provenance)
        self.unknowns = tuple(unknowns)

    @property
    def condition(self):
        return float(np.linalg.cond(self.matrix))

    def solve(self):
        try:
            solution = np.linalg.solve(self.matrix, self.rhs)
        except np.linalg.LinAlgError:
            raise SingularSystem("Boundary system is singular")
        residual = float(np.linalg.norm(self.matrix @ solution - self.rhs))
        if residual > 1e-8 * (1 + np.linalg.norm(self.rhs)):
            raise NumericalError("Boundary system residual {0:.3g}".format(residual))
        return solution, residual

def _check_erlang(model):
    if not isinstance(model, ErlangArrivals):
        raise CapabilityError("Expected an erlang model, got {0}".format(model.family))
    model.check_stable()

def positive_roots(model):
    cf = roots.erlang_characteristic(model)
    return roots.find_positive_roots(cf, model.expected_roots())

def assemble_system(model, rootset=None):
    _check_erlang(model)
    return assemble_kernel_system(model, rootset or positive_roots(model))

def assemble_kernel_system(model, rootset):
    "Root rows plus the normalization row, for any family's kernel."
    kernel = model.kernel()
    coefficients = kernel.coefficients()
    rows, rhs, provenance = [], [], []
    for root in rootset:
        if root.imag < -IMAGINARY_TOLERANCE * max(1.0, abs(root)):
            continue
        values = [c(root) for c in coefficients]
        rows.append([v.real for v in values])
        rhs.append(0.0)
        if abs(root.imag) <= IMAGINARY_TOLERANCE * max(1.0, abs(root)):
            provenance.append(("root", root))
        else:
            provenance.append(("root-real", root))
            rows.append([v.imag for v in values])
            rhs.append(0.0)
            provenance.append(("root-imag", root))
    rows.append([c.derivative(1)(0.0).real for c in coefficients])
    rhs.append(kernel.bracket().derivative(1)(0.0).real)
    provenance.append(("normalization", 0.0))
    if len(rows) != len(kernel.unknowns):
        raise SingularSystem("{0} equations for {1} unknowns"
                             .format(len(rows), len(kernel.unknowns)))
    return LinearSystem(rows, rhs, provenance, kernel.unknowns)

def numerator_transform(model, boundary):
    "R(s) with the boundary values substituted."
    kernel = model.kernel()
    total = RationalTransform.constant(0.0)
    for ((b, j), value) in zip(boundary.unknowns, boundary.values):
        total = total + value * kernel.coefficient(b, j)
    return total

def waiting_evaluator(model, boundary):
    "R(s) / (1 - K(s)); the poles at the partner rates cancel in the ratio."
    (top, bottom) = numerator_transform(model, boundary).common_numerators(
        model.kernel().bracket())
    lam = model.rate

    def formula(s):
        return top(s) / bottom(s)
    points = [0.0] + list(boundary.roots)
    return RemovableEvaluator(formula, points, lam)

def waiting_lst_erlang(model, boundary, s):
    return waiting_evaluator(model, boundary)(s)

def solve_kernel_waiting(model, rootset):
    system = assemble_kernel_system(model, rootset)
    condition = system.condition
    if condition > CONDITION_LIMIT:
        warn("Boundary system condition number {0:.3g}".format(condition),
             IllConditionedWarning)
    (solution, residual) = system.solve()
    boundary = BoundaryVector(system.unknowns, solution, rootset.roots)
    evaluator = waiting_evaluator(model, boundary)
    diagnostics = {"residuals": [residual], "condition": condition,
                   "root_residuals": rootset.residuals,
                   "provenance": [kind for (kind, root) in system.provenance]}
    log.info("%s theta=%g: %d unknowns, condition %.3g",
             model.family, model.theta, len(system.unknowns), condition)
    return WaitingSolution(model, rootset, boundary, evaluator, diagnostics)

def solve_waiting_erlang(model):
    _check_erlang(model)
    return solve_kernel_waiting(model, positive_roots(model))

def splus_variants(model):
    """Candidate transforms of [S - A]^+, keyed by the sign of the
    theta g*(s) (l/(l - s))^n term."""
    kernel = model.kernel()
    base = kernel.splus()
    if model.theta == 0:
        return {-1: base}
    lam, n = model.rate, model.stages
    term = (model.theta * g_transform(model.service)
            * RationalTransform.partial_fraction(lam ** n * (-1) ** n, lam, n))
    return {-1: base, +1: (base + 2 * term).reduced()}

def _select_splus(model, validate):
    lam = model.rate
    variants = {sign: transform_evaluator(t, lam)
                for (sign, t) in splus_variants(model).items()}
    if not validate:
        return variants[-1]
    points = [lam * x for x in ORACLE_POINTS]
    oracle = [quadrature.model_splus_quadrature(model, s) for s in points]
    passing = []
    for (sign, evaluator) in sorted(variants.items(), reverse=True):
        errors = [abs(evaluator(s) - ref) for (s, ref) in zip(points, oracle)]
        ok = max(errors) <= ORACLE_TOLERANCE
        log.info("[S-A]^+ transform, sign %+d of the theta g*(s)(l/(l-s))^n term: "
                 "max oracle error %.3g, %s", sign, max(errors),
                 "passes" if ok else "fails")
        if ok:
            passing.append(sign)
    if not passing:
        raise OracleMismatch("No sign variant of the [S-A]^+ transform matches quadrature")
    if model.theta == 0:
        log.info("theta = 0: sign of the theta g*(s) term is immaterial")
    return variants[passing[-1]]

def splus_evaluator_erlang(model, validate=True):
    if model._splus_evaluator is None or (validate and not model._splus_validated):
        model._splus_evaluator = _select_splus(model, validate)
        model._splus_validated = validate
    return model._splus_evaluator

def splus_lst_erlang(model, s, validate=True):
    _check_erlang(model)
    return splus_evaluator_erlang(model, validate)(s)

def prob_s_gt_a_erlang(model):
    _check_erlang(model)
    return check_probability(1 - model.kernel().prob_s_le_a())

def kernel_overlap_laws(model, solution, splus):
    "Maximum and minimum overlap laws from a waiting solution and [S-A]^+."
    lam = model.rate

    def maximum(s):
        return solution(s) * splus(s)

    def factor(s):
        return 2 - splus(s)
    if abs(factor(0.0) - 1) > 1e-9:
        raise NumericalError("Minimum overlap factor r(0) = {0}".format(factor(0.0)))

    def minimum(s):
        return solution(s) * factor(s)
    splus_mean = lst_mean(splus, lam)
    return (OverlapLaw(MAX_OVERLAP, maximum, solution.mean + splus_mean),
            OverlapLaw(MIN_OVERLAP, minimum, lst_mean(minimum, lam)))

def max_overlap_erlang(model, solution=None, validate=True):
    if solution is None:
        solution = solve_waiting_erlang(model)
    return kernel_overlap_laws(model, solution,
                               splus_evaluator_erlang(model, validate))[0]

def min_overlap_erlang(model, solution=None, validate=True):
    if solution is None:
        solution = solve_waiting_erlang(model)
    return kernel_overlap_laws(model, solution,
                               splus_evaluator_erlang(model, validate))[1]
