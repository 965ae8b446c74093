#
# kernel.py
# From the straddle project
#
# Copyright (c) 2026 The straddle authors
# All rights reserved.  Distributed under the BSD license; see LICENSE.txt.

"""The transform kernel of S - A.

The joint density of the service time and its FGM partner is a finite sum
of terms c * x**k * exp(-b*x) * u(y), where u is either the service
density or the kernel f_S(1 - 2F_S).  Conditioning the Lindley step
W' = [W + S - A]^+ on W gives

    w*(s) (1 - K(s)) = R(s)

with K(s) = E exp(-s(S - A)) and R(s) linear in the unknown derivatives
w*^(j)(b) at the exponential rates b of the partner.  Everything here is
exact rational arithmetic in s.
"""

import collections
import math

from scipy import special

from straddle.distlib import RationalTransform, lst, g_transform

KernelTerm = collections.namedtuple("KernelTerm",
                                    "coefficient power rate transform")

def partner_terms(service, partner, theta, weight=1.0, scale=1.0):
    """Kernel terms of (scale*S, partner) with FGM parameter THETA,
    weighted by WEIGHT."""
    phi = lst(service)
    g = g_transform(service)
    if scale != 1.0:
        phi = phi.scaled(scale)
        g = g.scaled(scale)
    terms = []
    for ((k, b), c) in sorted(partner.density_terms().terms.items()):
        terms.append(KernelTerm(weight * c, k, b, phi))
    if theta != 0:
        for ((k, b), c) in sorted(partner.kernel_terms().terms.items()):
            terms.append(KernelTerm(weight * theta * c, k, b, g))
    return terms

class Kernel:
    def __init__(self, terms):
        self.terms = tuple(terms)
        powers = {}
        for term in self.terms:
            powers[term.rate] = max(powers.get(term.rate, 0), term.power)
        self.rates = tuple(sorted(powers))
        self.unknowns = tuple((b, j) for b in self.rates
                              for j in range(powers[b] + 1))
        self._bilateral = None
        self._coefficients = {}
        self._splus = None

    def bilateral(self):
        "K(s) = E exp(-s(S - A)), continued analytically."
        if self._bilateral is None:
            total = RationalTransform.constant(0.0)
            for t in self.terms:
                k = t.power
                # k! / (b - s)^(k+1) = (-1)^(k+1) k! / (s - b)^(k+1)
                factor = RationalTransform.partial_fraction(
                    t.coefficient * (-1) ** (k + 1) * math.factorial(k),
                    t.rate, k + 1)
                total = total + factor * t.transform
            self._bilateral = total
        return self._bilateral

    def bracket(self):
        return 1.0 - self.bilateral()

    def characteristic(self):
        "Numerator of the bracket over its least common denominator."
        return self.bracket().numerator

    def coefficient(self, rate, order):
        "Rational coefficient of w*^(order)(rate) in R(s)."
        key = (rate, order)
        if key not in self._coefficients:
            total = RationalTransform.constant(0.0)
            for t in self.terms:
                if t.rate != rate or t.power < order:
                    continue
                k, b = t.power, t.rate
                for i in range(order, k + 1):
                    u = t.transform.derivative(i - order)(b).real
                    factor = (t.coefficient * (-1) ** i
                              * math.factorial(k) / math.factorial(i)
                              * special.comb(i, order, exact=True) * u)
                    q = k + 1 - i
                    # b^(-q) - (b - s)^(-q)
                    total = total + factor * b ** (-q)
                    total = total - RationalTransform.partial_fraction(
                        factor * (-1) ** q, b, q)
            self._coefficients[key] = total
        return self._coefficients[key]

    def coefficients(self):
        return [self.coefficient(b, j) for (b, j) in self.unknowns]

    def splus(self):
        """E exp(-s[S - A]^+): the functional equation with W = 0.

        Its poles at the partner rates are removable and cancelled here."""
        if self._splus is None:
            total = self.bilateral()
            for b in self.rates:
                total = total + self.coefficient(b, 0)
            self._splus = total.reduced()
        return self._splus

    def prob_s_le_a(self):
        "P(S <= A), the limit of splus at infinity."
        total = 0.0
        for t in self.terms:
            k, b = t.power, t.rate
            for i in range(k + 1):
                u = t.transform.derivative(i)(b).real
                total += (t.coefficient * (-1) ** i * math.factorial(k)
                          / math.factorial(i) * b ** (i - k - 1) * u)
        return total

    def mean_difference(self):
        "E(S - A) = -K'(0)."
        return -self.bilateral().derivative(1)(0.0).real
