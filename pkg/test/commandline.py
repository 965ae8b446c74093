#
# commandline.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

import csv
import io
import json
import os
import tempfile
import unittest
import warnings
from contextlib import redirect_stdout, redirect_stderr

import straddle
from straddle.commandline import *

MM1 = ["-s", "model.family=mg1", "-s", "model.rate=0.5", "-s", "model.theta=0",
       "-s", 'model.service={"kind": "exponential", "rate": 1.0}']
SMALL_SIM = ["-s", "sim.customers=50000", "-s", "sim.warmup=2000",
             "-s", "sim.replications=20", "-s", "sim.seed=2026"]

def invoke(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()

def table(text):
    return list(csv.reader(io.StringIO(text)))

class CommandlineTestCase(unittest.TestCase):
    def testAnalyze(self):
        (code, out, err) = invoke("analyze", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        report = json.loads(out)
        self.assertAlmostEqual(report["mean_wait"], 1.0, delta=1e-6)
        self.assertAlmostEqual(report["mean_max_overlap"], 4 / 3, delta=1e-6)
        self.assertAlmostEqual(report["mean_min_overlap"], 2 / 3, delta=1e-6)
        self.assertAlmostEqual(report["prob_wait_zero"], 0.5, delta=1e-5)
        self.assertAlmostEqual(report["rho"], 0.5)
        self.assertEqual(report["kendall_tau"], 0.0)

    def testAnalyzeOutput(self):
        directory = tempfile.mkdtemp(prefix="straddletest-")
        filename = os.path.join(directory, "report.json")
        try:
            (code, out, err) = invoke("analyze", "-o", filename, *MM1)
            self.assertEqual(code, EXIT_OK, err)
            with open(filename, encoding="utf-8") as file:
                self.assertEqual(json.load(file), json.loads(out))
        finally:
            if os.path.exists(filename):
                os.unlink(filename)
            os.rmdir(directory)

    def testAnalyzeErlang(self):
        (code, out, err) = invoke("analyze", "-s", "model.family=erlang",
                                  "-s", "model.rate=1.0", "-s", "model.theta=0.5",
                                  "-s", "model.stages=2",
                                  "-s", 'model.service={"kind": "exponential", "rate": 3.0}')
        self.assertEqual(code, EXIT_OK, err)
        report = json.loads(out)
        self.assertEqual(len(report["roots"]), 4)
        self.assertLessEqual(report["mean_min_overlap"], report["mean_wait"])
        self.assertLessEqual(report["mean_wait"], report["mean_max_overlap"])

    def testValidation(self):
        (code, out, err) = invoke("analyze", *(MM1 + ["-s", "model.theta=1.5"]))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("model.theta", err)
        (code, out, err) = invoke("analyze", *(MM1 + ["-s", "model.rate=1.5"]))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("Unstable", err)
        (code, out, err) = invoke("analyze", *(MM1 + ["-s", "model.bogus=1"]))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("model.bogus", err)

    def testMissingFile(self):
        (code, out, err) = invoke("analyze", "/nonexistent/straddle.json")
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("straddle.json", err)

    def testSweep(self):
        (code, out, err) = invoke("sweep", "-s", "sweep.steps=4", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        rows = table(out)
        self.assertEqual(rows[0], SWEEP_HEADER)
        self.assertEqual(len(rows), 6)
        self.assertEqual([row[0] for row in rows[1:]], ["-1", "-0.5", "0", "0.5", "1"])
        means = [float(row[3]) for row in rows[1:]]
        for (a, b) in zip(means, means[1:]):
            self.assertGreaterEqual(a, b)
        self.assertAlmostEqual(float(rows[3][2]), 1.0, delta=1e-6)

    def testSweepRho(self):
        (code, out, err) = invoke("sweep", "-s", "sweep.steps=2",
                                  "-s", "sweep.rho=[0.25, 0.75]", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        rows = table(out)[1:]
        self.assertEqual(len(rows), 6)
        self.assertAlmostEqual(float(rows[0][1]), 0.25)
        self.assertAlmostEqual(float(rows[-1][1]), 0.75)
        # M/M/1 at rho = 3/4: E(W) = rho / (mu - l) = 3.
        self.assertAlmostEqual(float(rows[4][2]), 3.0, delta=1e-5)

    def testCompare(self):
        (code, out, err) = invoke("compare", *(MM1 + SMALL_SIM))
        self.assertEqual(code, EXIT_OK, err)
        rows = table(out)
        self.assertEqual(rows[0], COMPARE_HEADER)
        self.assertEqual([row[0] for row in rows[1:]], list(straddle.sim.STATISTICS))
        for row in rows[1:]:
            self.assertLess(abs(float(row[4])), Z_LIMIT)

    def testCompareFailure(self):
        (code, out, err) = invoke("compare", "--perturb", "1.5", *(MM1 + SMALL_SIM))
        self.assertEqual(code, EXIT_COMPARISON)
        self.assertIn("seed 2026", err)

    def testInvert(self):
        (code, out, err) = invoke("invert", "-s", "invert.points=20", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        rows = table(out)
        self.assertEqual(rows[0], INVERT_HEADER)
        self.assertEqual(len(rows), 22)
        self.assertAlmostEqual(float(rows[1][1]), 0.5, delta=1e-4)
        for column in (1, 2, 3):
            values = [float(row[column]) for row in rows[1:]]
            self.assertEqual(values, sorted(values))

    def testInvertTMax(self):
        (code, out, err) = invoke("invert", "-s", "invert.points=10",
                                  "-s", "invert.t_max=5", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        rows = table(out)
        self.assertEqual(len(rows), 12)
        self.assertAlmostEqual(float(rows[-1][0]), 5.0)

    def testInvertEmpirical(self):
        (code, out, err) = invoke("invert", "-s", "invert.points=10",
                                  "-s", "sim.customers=20000", "-s", "sim.warmup=1000",
                                  "-s", "sim.replications=2", *MM1)
        self.assertEqual(code, EXIT_OK, err)
        header = table(out)[0]
        self.assertEqual(header[4:], ["F_wait_empirical", "F_max_empirical",
                                      "F_min_empirical"])

    def testSimulate(self):
        (code, out, err) = invoke("simulate", "-s", "sim.customers=20000",
                                  "-s", "sim.warmup=1000", "-s", "sim.replications=2",
                                  *MM1)
        self.assertEqual(code, EXIT_OK, err)
        report = json.loads(out)
        self.assertEqual(report["replications"], 2)
        self.assertEqual(sorted(report["statistics"]), sorted(straddle.sim.STATISTICS))

suite = unittest.TestLoader().loadTestsFromTestCase(CommandlineTestCase)

if __name__ == "__main__":
    warnings.simplefilter("always", straddle.Warning)
    unittest.main(defaultTest="suite")
