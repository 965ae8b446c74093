#
# numerics.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""Small numerical helpers shared by the transform solvers."""

import numpy as np
from numpy.polynomial import polynomial as P

REMOVABLE_RADIUS = 1e-6
INTERPOLATION_SPACING = 1e-3
_OFFSETS = (-2.0, -1.0, 1.0, 2.0)

def richardson_derivative(f, h):
    """First derivative of F at 0 from central differences at h, h/2, h/4,
    combined by two rounds of Richardson extrapolation."""
    def central(step):
        return (f(step) - f(-step)) / (2 * step)
    d1, d2, d4 = central(h), central(h / 2), central(h / 4)
    r1 = (4 * d2 - d1) / 3
    r2 = (4 * d4 - d2) / 3
    return (16 * r2 - r1) / 15

def derivative_step(rate):
    return 1e-3 * max(1.0, rate)

def interpolate_through(f, s, centre, spacing):
    "Cubic interpolation of F at S through four points around CENTRE."
    offsets = np.array(_OFFSETS)
    values = np.array([complex(f(centre + spacing * k)) for k in _OFFSETS])
    coef = P.polyfit(offsets, values, len(_OFFSETS) - 1)
    return complex(P.polyval((s - centre) / spacing, coef))

class RemovableEvaluator:
    """Evaluate a formula that is analytic everywhere on Re(s) >= 0 but
    written with removable 0/0 points.  Near those points the value is
    interpolated from surrounding evaluations."""

    def __init__(self, formula, points, scale):
        self.formula = formula
        self.points = [complex(p) for p in points]
        self.scale = float(scale)

    def __call__(self, s):
        s = complex(s)
        for p in self.points:
            if abs(s - p) < REMOVABLE_RADIUS * self.scale:
                return interpolate_through(self.formula, s, p,
                                           INTERPOLATION_SPACING * self.scale)
        return complex(self.formula(s))

def real_if_close(value, tolerance=1e-9):
    value = complex(value)
    if abs(value.imag) <= tolerance * max(1.0, abs(value.real)):
        return value.real
    return value

