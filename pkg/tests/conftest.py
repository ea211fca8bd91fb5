"""Shared builders for the test suite."""

from fractions import Fraction

import pytest

from jetsolve import MultiPoly, PolySystem, PuiseuxJet


def P(nvars, terms):
    """MultiPoly from {exponent tuple: coefficient}."""
    return MultiPoly(nvars, {tuple(e): Fraction(c) if isinstance(c, int)
                             else c for e, c in terms.items()})


def jet(ram, terms, trunc=None):
    return PuiseuxJet(ram, list(terms), trunc)


def sq_system(polys):
    polys = list(polys)
    return PolySystem(polys, polys[0].nvars)


@pytest.fixture
def lam_x():
    """Convenience pair (lambda, x) as 1-unknown MultiPolys."""
    return MultiPoly.lam(1), MultiPoly.var(1, 1)
