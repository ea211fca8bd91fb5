"""Truncated Puiseux series (jets).

A jet is a finite sum  sum_i  g_i * lambda^(n_i / ram)  with strictly
increasing integer numerators n_i, plus a truncation order T: the jet is
asserted accurate modulo o(lambda^T).  trunc None means the jet is an exact
polynomial in lambda^(1/ram) (no truncation was applied).
"""

from fractions import Fraction
from math import gcd, lcm

import mpmath

from .coeffs import (coeff_conj, coeff_eq, coeff_is_zero, is_exact, to_mpc)


class PuiseuxJet:

    __slots__ = ("ram", "terms", "trunc")

    def __init__(self, ram, terms, trunc=None, normalize=True):
        terms = [(int(n), c) for n, c in terms if not coeff_is_zero(c)]
        terms.sort(key=lambda t: t[0])
        merged = []
        for n, c in terms:
            if merged and merged[-1][0] == n:
                s = merged[-1][1] + c
                if coeff_is_zero(s):
                    merged.pop()
                else:
                    merged[-1] = (n, s)
            else:
                merged.append((n, c))
        ram = int(ram)
        if ram < 1:
            raise ValueError("ramification must be positive")
        if normalize:
            g = ram
            for n, _ in merged:
                g = gcd(g, n)
            if merged and g > 1:
                ram //= g
                merged = [(n // g, c) for n, c in merged]
            elif not merged:
                ram = 1
        if trunc is not None:
            trunc = Fraction(trunc)
            merged = [(n, c) for n, c in merged if Fraction(n, ram) <= trunc]
        self.ram = ram
        self.terms = tuple(merged)
        self.trunc = trunc

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc=None):
        return cls(1, [], trunc)

    @classmethod
    def monomial(cls, coeff, num, ram, trunc=None):
        return cls(ram, [(num, coeff)], trunc)

    # -- views ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_exact_coeffs(self):
        return all(is_exact(c) for _, c in self.terms)

    def valuation(self):
        """Exponent of the leading term as a Fraction; None if the jet is
        identically zero (to available order)."""
        if not self.terms:
            return None
        return Fraction(self.terms[0][0], self.ram)

    def leading_coeff(self):
        return self.terms[0][1] if self.terms else None

    def exponents(self):
        return [Fraction(n, self.ram) for n, _ in self.terms]

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({c})*l^({n}/{self.ram})"
                              for n, c in self.terms)
        t = "" if self.trunc is None else f" + o(l^{self.trunc})"
        return body + t

    def __eq__(self, other):
        """Coefficient-wise equality (exact for rationals, tolerance-tagged
        for numerics); truncation orders are not compared."""
        if not isinstance(other, PuiseuxJet):
            return NotImplemented
        if self.ram != other.ram or len(self.terms) != len(other.terms):
            return False
        return all(n1 == n2 and coeff_eq(c1, c2)
                   for (n1, c1), (n2, c2) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash((self.ram, tuple(n for n, _ in self.terms)))

    def agrees(self, other, order):
        """True when the two jets coincide on all terms of exponent <= order."""
        a = [(Fraction(n, self.ram), c) for n, c in self.terms
             if Fraction(n, self.ram) <= order]
        b = [(Fraction(n, other.ram), c) for n, c in other.terms
             if Fraction(n, other.ram) <= order]
        if len(a) != len(b):
            return False
        return all(e1 == e2 and coeff_eq(c1, c2)
                   for (e1, c1), (e2, c2) in zip(a, b))

    # -- arithmetic -------------------------------------------------------

    def _join_trunc(self, other):
        if self.trunc is None:
            return other.trunc
        if other.trunc is None:
            return self.trunc
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        r = lcm(self.ram, other.ram)
        a = [(n * (r // self.ram), c) for n, c in self.terms]
        b = [(n * (r // other.ram), c) for n, c in other.terms]
        return PuiseuxJet(r, a + b, self._join_trunc(other))

    def __neg__(self):
        return PuiseuxJet(self.ram, [(n, -c) for n, c in self.terms],
                          self.trunc, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if coeff_is_zero(c):
            return PuiseuxJet.zero(self.trunc)
        return PuiseuxJet(self.ram, [(n, v * c) for n, v in self.terms],
                          self.trunc)

    def shift(self, num, den=1):
        """Multiply by lambda^(num/den); truncation shifts accordingly."""
        r = lcm(self.ram, den)
        a = [(n * (r // self.ram) + num * (r // den), c)
             for n, c in self.terms]
        t = None if self.trunc is None else self.trunc + Fraction(num, den)
        return PuiseuxJet(r, a, t)

    def truncate(self, order):
        order = Fraction(order)
        t = order if self.trunc is None else min(self.trunc, order)
        return PuiseuxJet(self.ram,
                          [(n, c) for n, c in self.terms
                           if Fraction(n, self.ram) <= order],
                          t)

    def conjugate(self):
        return PuiseuxJet(self.ram, [(n, coeff_conj(c)) for n, c in self.terms],
                          self.trunc, normalize=False)

    # -- rescaling helpers -------------------------------------------------

    def lift(self, k):
        """Re-express on ramification ram*k (inverse of normalization)."""
        return PuiseuxJet(self.ram * k, [(n * k, c) for n, c in self.terms],
                          self.trunc, normalize=False)

    def on_ram(self, tau):
        """Term list [(m, coeff)] with exponents m/tau; tau must be a
        multiple of ram."""
        if tau % self.ram:
            raise ValueError("incompatible ramification")
        k = tau // self.ram
        return [(n * k, c) for n, c in self.terms]

    # -- numeric evaluation -----------------------------------------------

    def eval(self, lam):
        """Principal-branch numeric value at a concrete lambda."""
        lam = to_mpc(lam)
        root = lam ** (mpmath.mpf(1) / self.ram)
        total = to_mpc(0)
        for n, c in self.terms:
            total += to_mpc(c) * root ** n
        return total


def common_ram(jets):
    r = 1
    for j in jets:
        r = lcm(r, j.ram)
    return r


def min_trunc(jets, default=None):
    """Weakest truncation guarantee among the given jets."""
    t = default
    for j in jets:
        if j.trunc is not None:
            t = j.trunc if t is None else min(t, j.trunc)
    return t


def jet_sort_key(jet):
    """Deterministic ordering key: by exponent sequence, then by coefficient
    (rationals before numerics, lexicographic on (re, im))."""
    key = []
    for n, c in jet.terms:
        e = Fraction(n, jet.ram)
        if is_exact(c):
            key.append((e, 0, float(c), 0.0))
        else:
            m = to_mpc(c)
            key.append((e, 1, float(mpmath.re(m)), float(mpmath.im(m))))
    return (key, jet.ram)
