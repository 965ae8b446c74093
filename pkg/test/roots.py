#
# roots.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import unittest
import warnings

from numpy.polynomial import Polynomial

import straddle
from straddle.errors import *
from straddle.distlib import Exponential, Erlang, Hyperexponential
from straddle.models import MG1, ErlangArrivals, Proportional
from straddle.roots import *

class WindingTestCase(unittest.TestCase):
    def testCount(self):
        f = lambda z: (z - 1) * (z - 2) * (z + 1)
        self.assertEqual(winding_count(f, 5.0), 2)
        g = lambda z: (z - (1 + 2j)) * (z - (1 - 2j)) * (z + 3)
        self.assertEqual(winding_count(g, 5.0), 2)
        self.assertEqual(winding_count(g, 1.5), 0)
        self.assertEqual(winding_count(lambda z: z + 4.0, 10.0), 0)

    def testContourTooClose(self):
        self.assertRaises(ContourTooClose, winding_count, lambda z: z - 2.0, 2.0)

    def testLargeRadius(self):
        # Small roots seen from a contour far larger than they are.
        f = Polynomial.fromroots([0.5, 1 + 1j, 1 - 1j, 2.0, -1.0, -3.0 + 2j, -3.0 - 2j])
        for radius in (10.0, 1e4, 1e7):
            self.assertEqual(winding_count(f, radius), 4)

    def testFujiwaraBound(self):
        # z^3 - 7z + 6 = (z - 1)(z - 2)(z + 3)
        cf = CharacteristicFunction(None, Polynomial([6.0, -7.0, 0.0, 1.0]),
                                    Polynomial([1.0]))
        self.assertAlmostEqual(cf.fujiwara_bound(), 2 * 7 ** 0.5)
        self.assertAlmostEqual(contour_radius(cf, [1.0, 2.0]), 1.01 * 2 * 7 ** 0.5)

class CharacteristicTestCase(unittest.TestCase):
    def testTau1Independent(self):
        for service in (Exponential(1.0), Erlang(2, 4.0), Hyperexponential([0.5, 0.5], [1.0, 3.0])):
            model = MG1(0.5, 0.0, service)
            self.assertAlmostEqual(find_tau1(model).real, 1.0, delta=1e-10)

    def testTau1Dependent(self):
        # With Exp(1) service and l = 1/2 the root solves s^3 + 1.5s^2 - 1.25s - 1 = 0.
        model = MG1(0.5, 0.5, Exponential(1.0))
        tau = find_tau1(model)
        self.assertAlmostEqual(tau.imag, 0.0)
        self.assertAlmostEqual(tau.real, 0.944485, delta=1e-5)
        self.assertAlmostEqual(Polynomial([-1.0, -1.25, 1.5, 1.0])(tau.real), 0.0, delta=1e-9)

    def testTau1Bounded(self):
        for theta in (-1.0, -0.5, 0.5, 1.0):
            model = MG1(0.5, theta, Erlang(2, 3.0))
            tau = find_tau1(model)
            self.assertGreater(tau.real, 0)
            self.assertLess(abs(mg1_characteristic(model)(tau)), 1e-8)

    def testErlangRootCount(self):
        model = ErlangArrivals(1.0, 0.5, Exponential(3.0), 2)
        cf = erlang_characteristic(model)
        rootset = find_positive_roots(cf, model.expected_roots())
        self.assertEqual(rootset.count, 4)
        self.assertEqual(rootset.verified_count, 4)
        for r in rootset:
            self.assertGreater(r.real, 0)
            self.assertLess(abs(cf.polynomial(r)) / (1 + abs(cf.polynomial.deriv()(r))), 1e-8)
        # Closed under conjugation.
        for r in rootset:
            self.assertTrue(any(abs(r.conjugate() - q) < 1e-9 for q in rootset))

    def testErlangRootCountGrid(self):
        for n in (2, 3):
            for theta in (-1.0, -0.5, 0.0, 0.5, 1.0):
                for service in (Exponential(3.0), Erlang(2, 6.0)):
                    model = ErlangArrivals(1.0, theta, service, n)
                    rootset = find_positive_roots(erlang_characteristic(model),
                                                  model.expected_roots())
                    self.assertEqual(rootset.count, 3 * n - 2 if theta else n - 1)

    def testErlangThreeStages(self):
        model = ErlangArrivals(1.0, 0.5, Exponential(3.0), 3)
        cf = erlang_characteristic(model)
        rootset = find_positive_roots(cf, 7)
        self.assertEqual(rootset.count, 7)
        self.assertEqual(rootset.verified_count, 7)
        largest = max(abs(r) for r in cf.deflated().roots())
        self.assertLessEqual(largest, cf.fujiwara_bound())
        radius = contour_radius(cf, list(rootset))
        self.assertLessEqual(radius, cf.radius)
        self.assertGreater(radius, max(abs(r) for r in rootset))

    def testKernelCharacteristic(self):
        model = Proportional(1.0, 0.5, Exponential(2.0), [(0.3, 0.5), (0.6, 0.5)])
        rootset = find_positive_roots(kernel_characteristic(model), 1)
        self.assertEqual(len(rootset), 1)
        self.assertAlmostEqual(model.kernel().bracket()(rootset[0]), 0.0, delta=1e-8)
        for theta in (-1.0, -0.5, 0.5, 1.0):
            model = Proportional(1.0, theta, Erlang(2, 4.0), [(0.3, 0.5), (0.6, 0.5)])
            rootset = find_positive_roots(kernel_characteristic(model), 1)
            self.assertEqual(rootset.verified_count, 1)
            self.assertGreater(rootset[0].real, 0)

    def testMismatch(self):
        model = ErlangArrivals(1.0, 0.5, Exponential(3.0), 2)
        with self.assertRaises(RootCountMismatch) as cm:
            find_positive_roots(erlang_characteristic(model), 3)
        self.assertEqual(cm.exception.found, 4)
        self.assertEqual(cm.exception.expected, 3)

    def testUnstable(self):
        self.assertRaises(UnstableModelError, mg1_characteristic,
                          MG1(1.0, 0.5, Exponential(1.0)))

    def testCofactor(self):
        model = ErlangArrivals(1.0, -0.5, Exponential(3.0), 2)
        cf = erlang_characteristic(model)
        for s in (0.4, 1.5 + 0.5j, 3.0):
            self.assertAlmostEqual(cf.polynomial(s), cf(s) * cf.cofactor(s), delta=1e-8)

suite = unittest.TestSuite()
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(WindingTestCase))
suite.addTest(unittest.TestLoader().loadTestsFromTestCase(CharacteristicTestCase))

if __name__ == "__main__":
    warnings.simplefilter("always", straddle.Warning)
    unittest.main(defaultTest="suite")
