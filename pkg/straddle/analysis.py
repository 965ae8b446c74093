#
# analysis.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Family-independent entry points to the analytic solvers."""

import collections
import logging
import math

from straddle.errors import *
from straddle.models import MG1, ErlangArrivals, Proportional
from straddle import solver_mg1
from straddle import solver_erlang
from straddle import solver_prop

log = logging.getLogger(__name__)

Laws = collections.namedtuple("Laws", "waiting max_overlap min_overlap")

def solve(model):
    "The waiting-time solution for any model family."
    if isinstance(model, MG1):
        return solver_mg1.solve_waiting(model)
    if isinstance(model, ErlangArrivals):
        return solver_erlang.solve_waiting_erlang(model)
    if isinstance(model, Proportional):
        return solver_prop.solve_waiting_prop(model)
    raise CapabilityError("No analytic solver for {0!r}".format(model))

def overlap_laws(model, solution=None):
    if solution is None:
        solution = solve(model)
    if isinstance(model, MG1):
        return Laws(solution, solver_mg1.max_overlap(model, solution),
                    solver_mg1.min_overlap(model, solution))
    if isinstance(model, ErlangArrivals):
        splus = solver_erlang.splus_evaluator_erlang(model)
        (high, low) = solver_erlang.kernel_overlap_laws(model, solution, splus)
        return Laws(solution, high, low)
    (high, low) = solver_prop.overlap_laws_prop(model, solution)
    return Laws(solution, high, low)

def prob_s_gt_a(model):
    if isinstance(model, MG1):
        return solver_mg1.prob_s_gt_a(model)
    if isinstance(model, ErlangArrivals):
        return solver_erlang.prob_s_gt_a_erlang(model)
    return solver_prop.prob_s_gt_a_prop(model)

def splus(model):
    "Evaluator of E exp(-s[S - A]^+) for any family."
    if isinstance(model, MG1):
        return solver_mg1.splus_evaluator(model)
    if isinstance(model, ErlangArrivals):
        return solver_erlang.splus_evaluator_erlang(model)
    return solver_prop.splus_evaluator_prop(model)

def tau1(solution):
    "The single characteristic root, when the family has one."
    model = solution.model
    if isinstance(model, ErlangArrivals) or solution.tau1 is None:
        return math.nan
    return complex(solution.tau1).real

def _number(value):
    value = complex(value)
    if value.imag == 0:
        return value.real
    return [value.real, value.imag]

def report(model, laws=None):
    "The analyze report as a plain mapping."
    if laws is None:
        laws = overlap_laws(model)
    solution = laws.waiting
    (kendall, spearman) = model.rank_correlations()
    result = collections.OrderedDict()
    result["model"] = model.to_dict()
    result["rho"] = model.rho
    result["kendall_tau"] = kendall
    result["spearman_rho"] = spearman
    result["roots"] = [_number(r) for r in (solution.roots or [])]
    boundary = solution.boundary
    if isinstance(boundary, dict):
        result["boundary"] = {k: _number(v) for (k, v) in boundary.items()}
    else:
        result["boundary"] = boundary.to_dict()
    result["mean_wait"] = solution.mean
    result["mean_max_overlap"] = laws.max_overlap.mean
    result["mean_min_overlap"] = laws.min_overlap.mean
    result["prob_wait_zero"] = solution(1e6 * model.rate).real
    result["prob_s_gt_a"] = prob_s_gt_a(model)
    if isinstance(model, MG1):
        (formula, derivative, discrepancy) = \
            solver_mg1.mean_max_formula_diagnostic(model, solution)
        result["mean_max_formula"] = {"formula": formula, "derivative": derivative,
                                      "discrepancy": discrepancy}
    diagnostics = dict(solution.diagnostics)
    diagnostics["root_residuals"] = [float(r) for r in diagnostics.get("root_residuals", [])]
    result["diagnostics"] = diagnostics
    return result
