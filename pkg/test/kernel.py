#
# kernel.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import unittest
import warnings

import straddle
from straddle.distlib import Exponential, Erlang, Hyperexponential
from straddle.models import MG1, ErlangArrivals, Proportional
from straddle import solver_mg1
from straddle import quadrature

class KernelTestCase(unittest.TestCase):
    def testNormalization(self):
        for model in (MG1(0.5, 0.5, Exponential(1.0)),
                      ErlangArrivals(1.0, -0.5, Erlang(2, 3.0), 2),
                      Proportional(1.0, 0.5, Exponential(2.0), [(0.3, 0.5), (0.6, 0.5)])):
            kernel = model.kernel()
            self.assertAlmostEqual(kernel.bilateral()(0.0), 1.0, places=12)
            self.assertAlmostEqual(kernel.splus()(0.0), 1.0, places=12)
            for c in kernel.coefficients():
                self.assertAlmostEqual(c(0.0), 0.0, places=12)

    def testMeanDifference(self):
        model = MG1(0.5, 0.5, Exponential(1.0))
        self.assertAlmostEqual(model.kernel().mean_difference(), -1.0, places=10)
        model = ErlangArrivals(1.0, 0.8, Erlang(2, 3.0), 3)
        self.assertAlmostEqual(model.kernel().mean_difference(), 2 / 3 - 3.0, places=10)
        model = Proportional(1.0, -0.4, Exponential(2.0), [(0.3, 0.5), (0.6, 0.5)])
        self.assertAlmostEqual(model.kernel().mean_difference(), 0.5 * 0.55 - 1.0, places=10)

    def testUnknowns(self):
        self.assertEqual(len(MG1(0.5, 0.5, Exponential(1.0)).kernel().unknowns), 2)
        self.assertEqual(len(MG1(0.5, 0.0, Exponential(1.0)).kernel().unknowns), 1)
        for n in (1, 2, 3):
            model = ErlangArrivals(1.0, 0.5, Exponential(3.0), n)
            self.assertEqual(len(model.kernel().unknowns), 3 * n - 1)
            model = ErlangArrivals(1.0, 0.0, Exponential(3.0), n)
            self.assertEqual(len(model.kernel().unknowns), n)

    def testReducesToMG1(self):
        service = Hyperexponential([0.4, 0.6], [1.0, 3.0])
        mg1 = MG1(0.7, 0.6, service)
        erlang = ErlangArrivals(0.7, 0.6, service, 1)
        closed = solver_mg1.splus_evaluator(mg1)
        for s in (0.3, 1.0, 2.0, 0.5 + 0.5j):
            self.assertAlmostEqual(mg1.kernel().splus()(s), closed(s), places=10)
            self.assertAlmostEqual(erlang.kernel().splus()(s), closed(s), places=10)

    def testSplusAgainstQuadrature(self):
        model = ErlangArrivals(1.0, 0.5, Exponential(3.0), 2)
        splus = model.kernel().splus()
        # l and 2l are removable and must not be poles of the reduced form.
        self.assertEqual(splus.right_poles(), [])
        for s in (0.1, 1.0, 2.0):
            self.assertAlmostEqual(splus(s).real,
                                   quadrature.model_splus_quadrature(model, s), places=7)

    def testProbSLeA(self):
        model = MG1(0.5, 1.0, Exponential(1.0))
        self.assertAlmostEqual(model.kernel().prob_s_le_a(), 0.7, places=12)
        model = ErlangArrivals(1.0, -0.5, Erlang(2, 3.0), 2)
        self.assertAlmostEqual(1 - model.kernel().prob_s_le_a(),
                               quadrature.model_prob_s_gt_a_quadrature(model), places=8)

    def testCharacteristic(self):
        model = MG1(0.5, 0.5, Exponential(1.0))
        kernel = model.kernel()
        numerator = kernel.characteristic()
        bracket = kernel.bracket()
        for s in (0.3, 2.0 + 1j):
            self.assertAlmostEqual(numerator(s) / bracket.denominator(s), bracket(s))

suite = unittest.TestLoader().loadTestsFromTestCase(KernelTestCase)

if __name__ == "__main__":
    warnings.simplefilter("always", straddle.Warning)
    unittest.main(defaultTest="suite")
