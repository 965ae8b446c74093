#
# solver_prop.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import unittest
import warnings

import straddle
from straddle.errors import *
from straddle.distlib import Exponential, Erlang, lst
from straddle.models import MG1, Proportional
from straddle.solver_prop import *
from straddle import solver_mg1
from straddle import quadrature

ATOMS = [(0.3, 0.5), (0.6, 0.5)]

class SplusTestCase(unittest.TestCase):
    def setUp(self):
        self.model = Proportional(1.0, 0.5, Exponential(2.0), ATOMS)

    def testAgainstKernel(self):
        kernel = self.model.kernel().splus()
        for s in (0.2, 1.0, 2.0, 1.5 + 0.5j):
            self.assertLessEqual(abs(kernel(s)), 1 + 1e-9)
            self.assertAlmostEqual(splus_lst_prop(self.model, s), kernel(s), delta=1e-9)

    def testAgainstQuadrature(self):
        for s in (0.5, 1.0):
            self.assertAlmostEqual(splus_lst_prop(self.model, s).real,
                                   quadrature.model_splus_quadrature(self.model, s),
                                   delta=1e-6)

    def testOrigin(self):
        self.assertAlmostEqual(splus_lst_prop(self.model, 0.0), 1.0, delta=1e-9)
        # Removable points at l and 2l.
        for point in (1.0, 2.0):
            self.assertAlmostEqual(splus_lst_prop(self.model, point),
                                   splus_lst_prop(self.model, point + 1e-5), delta=1e-4)

class WaitingTestCase(unittest.TestCase):
    def testSmallAtom(self):
        # Omega close to zero leaves an M/G/1 queue.
        for theta in (-0.5, 0.5):
            service = Erlang(2, 3.0)
            prop = solve_waiting_prop(Proportional(0.6, theta, service, [(1e-12, 1.0)]))
            mg1 = solver_mg1.solve_waiting(MG1(0.6, theta, service))
            self.assertAlmostEqual(prop.mean, mg1.mean, delta=1e-6)
            for s in (0.3, 1.0, 3.0):
                self.assertAlmostEqual(prop(s), mg1(s), delta=1e-8)

    def testIndependent(self):
        # With theta = 0 this is M/G/1 with service (1 - Omega) S.
        model = Proportional(1.0, 0.0, Exponential(2.0), ATOMS)
        solution = solve_waiting_prop(model)
        self.assertEqual(len(solution.roots or []), 0)
        phi = lst(model.service)
        rho = model.rho
        self.assertAlmostEqual(rho, 0.275)
        for s in (0.4, 1.0, 2.5):
            scaled = sum(p * phi((1 - a) * s) for (a, p) in ATOMS)
            expected = (1 - rho) * s / (s - 1.0 + scaled)
            self.assertAlmostEqual(solution(s), expected, delta=1e-8)

    def testDependent(self):
        model = Proportional(1.0, 0.5, Exponential(2.0), ATOMS)
        solution = solve_waiting_prop(model)
        self.assertEqual(len(solution.roots), 1)
        self.assertGreater(solution.roots[0].real, 0)
        self.assertAlmostEqual(solution(0.0), 1.0, delta=1e-9)
        previous = 1.0
        for s in (0.1, 0.5, 1.0, 3.0, 10.0):
            value = solution(s)
            self.assertAlmostEqual(value.imag, 0.0, delta=1e-9)
            self.assertTrue(0 < value.real < previous)
            previous = value.real

    def testErlangService(self):
        for theta in (-1.0, -0.5, 0.5, 1.0):
            model = Proportional(1.0, theta, Erlang(2, 4.0), ATOMS)
            solution = solve_waiting_prop(model)
            self.assertEqual(solution.roots.verified_count, 1)
            self.assertAlmostEqual(solution(0.0), 1.0, delta=1e-9)
            self.assertLess(max(solution.diagnostics["residuals"]), 1e-7)

    def testLaws(self):
        model = Proportional(1.0, -0.7, Erlang(2, 4.0), ATOMS)
        solution = solve_waiting_prop(model)
        (high, low) = overlap_laws_prop(model, solution)
        self.assertAlmostEqual(high(0.0), 1.0, delta=1e-9)
        self.assertAlmostEqual(low(0.0), 1.0, delta=1e-9)
        self.assertTrue(low.mean <= solution.mean <= high.mean)
        self.assertAlmostEqual(high.mean - solution.mean,
                               solution.mean - low.mean, delta=1e-6)

    def testProbability(self):
        model = Proportional(1.0, 0.8, Exponential(2.0), ATOMS)
        self.assertAlmostEqual(prob_s_gt_a_prop(model),
                               quadrature.model_prob_s_gt_a_quadrature(model), delta=1e-8)

    def testCapability(self):
        self.assertRaises(CapabilityError, solve_waiting_prop,
                          MG1(0.5, 0.5, Exponential(1.0)))
        self.assertRaises(ModelError, Proportional, 1.0, 0.5, Exponential(2.0),
                          [(0.3, 0.5), (0.6, 0.4)])
        self.assertRaises(ModelError, Proportional, 1.0, 0.5, Exponential(2.0),
                          [(1.0, 1.0)])
        self.assertRaises(UnstableModelError, solve_waiting_prop,
                          Proportional(4.0, 0.5, Exponential(2.0), [(0.2, 1.0)]))

suite = unittest.TestSuite()
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(SplusTestCase))
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(WaitingTestCase))

if __name__ == "__main__":
    warnings.simplefilter("always", straddle.Warning)
    unittest.main(defaultTest="suite")
