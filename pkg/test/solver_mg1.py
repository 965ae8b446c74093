#
# solver_mg1.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import unittest
import warnings

import straddle
from straddle.errors import *
from straddle.distlib import Exponential, Erlang, Hyperexponential, lst
from straddle.models import MG1, ErlangArrivals
from straddle.solver_mg1 import *
from straddle import quadrature

THETAS = (-1.0, -0.5, 0.5, 1.0)

class IndependentTestCase(unittest.TestCase):
    "theta = 0 recovers the classical M/M/1 values."
    def setUp(self):
        self.model = MG1(0.5, 0.0, Exponential(1.0))
        self.solution = solve_waiting(self.model)

    def testMeans(self):
        self.assertAlmostEqual(self.solution.mean, 1.0, delta=1e-6)
        self.assertAlmostEqual(max_overlap(self.model, self.solution).mean, 4 / 3, delta=1e-6)
        self.assertAlmostEqual(min_overlap(self.model, self.solution).mean, 2 / 3, delta=1e-6)

    def testBoundary(self):
        self.assertAlmostEqual(self.solution.tau1.real, 1.0, delta=1e-10)
        phi = lst(self.model.service)
        self.assertAlmostEqual(self.solution.boundary["w_lambda"],
                               (1 - self.model.rho) / phi(0.5).real, delta=1e-9)

    def testTransform(self):
        # W is 0 w.p. 1 - rho, else Exp(mu - l).
        for s in (0.0, 0.3, 1.0, 2.0 + 1j):
            expected = 0.5 + 0.5 * 0.5 / (0.5 + s)
            self.assertAlmostEqual(self.solution(s), expected, delta=1e-9)

    def testDiagnostic(self):
        (formula, derivative, discrepancy) = mean_max_formula_diagnostic(self.model)
        self.assertLess(discrepancy, 1e-6)
        self.assertAlmostEqual(derivative, 4 / 3, delta=1e-6)

class DependentTestCase(unittest.TestCase):
    def testBoundaryClosedForms(self):
        for theta in THETAS:
            model = MG1(0.5, theta, Exponential(1.0))
            solution = solve_waiting(model)
            tau = solution.tau1.real
            phi = lst(model.service)
            g = straddle.distlib.g_transform(model.service)
            c1 = theta * g(0.5).real - phi(0.5).real
            w1 = 2 * 0.5 * (0.5 - tau) / (tau * c1)
            w2 = 2 * 0.5 * (1.0 - tau) / (tau * theta * g(1.0).real)
            self.assertAlmostEqual(solution.boundary["w_lambda"], w1, delta=1e-9)
            self.assertAlmostEqual(solution.boundary["w_2lambda"], w2, delta=1e-9)
            # The boundary values are the transform itself at l and 2l.
            self.assertAlmostEqual(solution(0.5).real, w1, delta=1e-6)
            self.assertAlmostEqual(solution(1.0).real, w2, delta=1e-6)

    def testKnownCase(self):
        model = MG1(0.5, 0.5, Exponential(1.0))
        solution = solve_waiting(model)
        self.assertAlmostEqual(solution.boundary["w_lambda"], 0.78436, delta=1e-4)
        self.assertAlmostEqual(solution.boundary["w_2lambda"], 0.70534, delta=1e-4)
        self.assertAlmostEqual(solution.mean, 0.808784, delta=1e-4)
        high = max_overlap(model, solution)
        low = min_overlap(model, solution)
        # E[(S - A)^+] = 1/3 - theta/10 for this pair.
        self.assertAlmostEqual(high.mean - solution.mean, 1 / 3 - 0.05, delta=1e-6)
        self.assertAlmostEqual(solution.mean - low.mean, 1 / 3 - 0.05, delta=1e-6)

    def testTransformShape(self):
        for theta in THETAS:
            model = MG1(0.6, theta, Erlang(2, 3.0))
            solution = solve_waiting(model)
            laws = (solution, max_overlap(model, solution), min_overlap(model, solution))
            for law in laws:
                self.assertAlmostEqual(law(0.0), 1.0, delta=1e-9)
                previous = 1.0
                for s in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
                    value = law(s)
                    self.assertAlmostEqual(value.imag, 0.0, delta=1e-9)
                    self.assertTrue(0 < value.real <= previous + 1e-12)
                    previous = value.real
            (w, m, v) = (laws[0].mean, laws[1].mean, laws[2].mean)
            self.assertTrue(v <= w <= m)

    def testMonotoneInTheta(self):
        means = [solve_waiting(MG1(0.5, theta, Exponential(1.0))).mean
                 for theta in (-1.0, -0.5, 0.0, 0.5, 1.0)]
        for (a, b) in zip(means, means[1:]):
            self.assertGreater(a, b)

    def testDiagnosticReported(self):
        (formula, derivative, discrepancy) = mean_max_formula_diagnostic(
            MG1(0.5, 0.5, Exponential(1.0)))
        self.assertAlmostEqual(discrepancy, abs(formula - derivative))

class SplusTestCase(unittest.TestCase):
    def testQuadrature(self):
        for service in (Exponential(1.0), Erlang(2, 3.0)):
            for theta in THETAS:
                model = MG1(0.5, theta, service)
                for s in (0.1, 0.5, 1.0, 2.0):
                    self.assertAlmostEqual(splus_lst(model, s).real,
                                           quadrature.model_splus_quadrature(model, s),
                                           delta=1e-6)

    def testRemovablePoints(self):
        model = MG1(0.5, 0.7, Hyperexponential([0.2, 0.8], [0.5, 4.0]))
        self.assertEqual(splus_transform(model).right_poles(), [])
        for point in (0.5, 1.0):
            near = splus_lst(model, point + 1e-5)
            at = splus_lst(model, point)
            self.assertAlmostEqual(at, near, delta=1e-4)
        self.assertAlmostEqual(splus_lst(model, 0.0), 1.0, delta=1e-9)

    def testMinimumFactor(self):
        model = MG1(0.5, -0.8, Erlang(2, 3.0))
        r = min_overlap_factor(model)
        splus = splus_evaluator(model)
        self.assertAlmostEqual(r(0.0), 1.0, delta=1e-9)
        for s in (0.2, 1.3, 4.0, 1 + 2j):
            self.assertAlmostEqual(r(s), 2 - splus(s), delta=1e-9)

    def testProbability(self):
        self.assertAlmostEqual(prob_s_gt_a(MG1(0.5, 1.0, Exponential(1.0))), 0.3)
        self.assertAlmostEqual(prob_s_gt_a(MG1(0.5, 0.0, Exponential(1.0))), 1 / 3)
        model = MG1(0.5, -0.6, Erlang(2, 3.0))
        self.assertAlmostEqual(prob_s_gt_a(model),
                               quadrature.model_prob_s_gt_a_quadrature(model), delta=1e-8)
        self.assertRaises(RangeViolation, check_probability, 1.1)
        self.assertEqual(check_probability(1 + 1e-12), 1.0)

    def testCapability(self):
        model = ErlangArrivals(1.0, 0.5, Exponential(3.0), 2)
        self.assertRaises(CapabilityError, solve_waiting, model)
        self.assertRaises(UnstableModelError, solve_waiting, MG1(2.0, 0.5, Exponential(1.0)))

suite = unittest.TestSuite()
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(IndependentTestCase))
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(DependentTestCase))
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(SplusTestCase))

if __name__ == "__main__":
    warnings.simplefilter("always", straddle.Warning)
    unittest.main(defaultTest="suite")
