"""Unit tests for the scalar Newton-polygon engine."""

from fractions import Fraction

import mpmath
import pytest

from jetsolve import (NotRegularError, SimplicityCertificate,
                      ZeroEquationError, extend_jet, newton_polygon,
                      poly_roots, puiseux_branches, simplicity_certificate)

from conftest import P, jet


def _branch_set(f, T):
    return puiseux_branches(f, T)


def test_newton_polygon_single_edge():
    f = P(1, {(0, 2): 1, (1, 0): -1})            # x^2 - lam
    edges = newton_polygon(f)
    assert len(edges) == 1
    assert edges[0].slope == Fraction(1, 2)
    assert edges[0].char_coeffs == [Fraction(-1), Fraction(0), Fraction(1)]


def test_newton_polygon_two_edges():
    # x^3 - (lam + lam^2) x^2 + lam^3 x: branches lam and lam^2 after the
    # x = 0 split, so slopes 1 and 2 appear
    f = P(1, {(0, 2): 1, (1, 1): -1, (2, 1): -1, (3, 0): 1})
    slopes = sorted(e.slope for e in newton_polygon(f))
    assert slopes == [Fraction(1), Fraction(2)]


def test_newton_polygon_guards():
    with pytest.raises(ZeroEquationError):
        newton_polygon(P(1, {}))
    with pytest.raises(NotRegularError):
        newton_polygon(P(1, {(1, 1): 1}))        # every term has lam


def test_poly_roots_exact_and_multiplicity():
    # (z - 1)^2 (z + 2)
    roots = dict(poly_roots([2, -3, 0, 1]))
    assert roots == {Fraction(1): 2, Fraction(-2): 1}
    assert poly_roots([1]) == []
    assert dict(poly_roots([0, 0, 1])) == {Fraction(0): 2}


def test_poly_roots_numeric():
    roots = poly_roots([1, 0, 1])                # z^2 + 1
    assert len(roots) == 2
    vals = sorted(complex(mpmath.im(z)) .real for z, _ in roots)
    assert abs(vals[0] + 1) < 1e-50 and abs(vals[1] - 1) < 1e-50


def test_branches_square_root():
    f = P(1, {(0, 2): 1, (1, 0): -1})
    got = _branch_set(f, 6)
    assert len(got) == 2
    assert sorted(b.leading_coeff() for b, m in got) == [-1, 1]
    assert all(b.valuation() == Fraction(1, 2) for b, m in got)
    assert all(m == 1 for _, m in got)


def test_branches_with_multiplicity():
    # (x - lam)^2 (x + lam): the double branch reports multiplicity 2
    f = (P(1, {(0, 1): 1, (1, 0): -1}) ** 2) * P(1, {(0, 1): 1, (1, 0): 1})
    got = _branch_set(f, 6)
    mults = {b.leading_coeff(): m for b, m in got}
    assert mults == {Fraction(1): 2, Fraction(-1): 1}


def test_branches_nested_polygon():
    # (x - lam)^2 - lam^3: x = lam +- lam^{3/2}
    f = P(1, {(0, 2): 1, (1, 1): -2, (2, 0): 1, (3, 0): -1})
    got = _branch_set(f, 6)
    assert len(got) == 2
    for b, m in got:
        assert m == 1
        assert b.terms[0] == (b.ram, Fraction(1))        # leading term lam
        assert Fraction(b.terms[1][0], b.ram) == Fraction(3, 2)


def test_no_small_branches():
    # f(0, 0) != 0: nothing vanishes at the origin
    f = P(1, {(0, 2): 1, (0, 0): 1, (1, 0): 3})
    assert _branch_set(f, 4) == []


def test_simplicity_certificate_and_extension():
    f = P(1, {(0, 2): 1, (1, 0): -1})
    b = jet(2, [(1, 1)], trunc=2)
    cert = simplicity_certificate(f, b)
    assert isinstance(cert, SimplicityCertificate)
    assert cert.alpha_order == Fraction(1, 2)
    ext = extend_jet(f, b, cert, 8)
    assert ext.trunc == 8
    assert ext.terms == ((1, Fraction(1)),)      # exact branch, no new terms


def test_not_simple_detected():
    f = P(1, {(0, 1): 1, (1, 0): -1}) ** 2       # (x - lam)^2
    b = jet(1, [(1, 1)])
    assert simplicity_certificate(f, b) == "not simple"


def test_extension_generates_series():
    # x^2 = lam^2 (1 + lam): the sqrt(1 + lam) binomial series appears
    f = P(1, {(0, 2): 1, (2, 0): -1, (3, 0): -1})
    got = _branch_set(f, 6)
    plus = next(b for b, _ in got if b.leading_coeff() == 1)
    coeffs = dict(plus.terms)
    assert plus.ram == 1
    assert coeffs[2] == Fraction(1, 2)
    assert coeffs[3] == Fraction(-1, 8)
    assert coeffs[6] == Fraction(7, 256)
