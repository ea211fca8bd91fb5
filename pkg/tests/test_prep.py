"""Unit tests for normalization, regularization and jet substitution."""

from fractions import Fraction

import pytest

from jetsolve import (LinearMap, MultiPoly, PolySystem, RegularizationError,
                      TruncationError, ZeroEquationError, jet_compose,
                      regularize)
from jetsolve.prep import residual_valuation

from conftest import P, jet, sq_system


def test_polysystem_validation():
    with pytest.raises(ZeroEquationError):
        PolySystem([MultiPoly.zero(1)], 1)
    sys2 = sq_system([P(2, {(1, 2, 0): 1}), P(2, {(0, 0, 1): 1})])
    norm = sys2.normalized()
    assert norm.equations[0].lambda_valuation() == 0


def test_linear_map_inverse():
    m = LinearMap([[1, 2], [0, 1]])
    inv = m.inverse()
    prod = [[sum(m.matrix[i][k] * inv.matrix[k][j] for k in range(2))
             for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
    assert LinearMap.identity(3).is_identity()


def test_linear_map_apply_poly():
    # f = x1, under x1 <- y1 + 2 y2
    m = LinearMap([[1, 2], [0, 1]])
    f = MultiPoly.var(1, 2)
    g = m.apply_poly(f)
    assert g == P(2, {(0, 1, 0): 1, (0, 0, 1): 2})


def test_linear_map_apply_jets():
    m = LinearMap([[1, 1], [0, 1]])
    a = jet(1, [(1, 1)], trunc=4)
    b = jet(1, [(2, 3)], trunc=4)
    out = m.apply_jets([a, b])
    assert out[0].terms == ((1, Fraction(1)), (2, Fraction(3)))
    assert out[1] == b


def test_regularize_identity_when_possible():
    sys2 = sq_system([P(2, {(0, 0, 2): 1, (1, 0, 0): -1}),    # x2^2 - lam
                      P(2, {(0, 0, 1): 1, (0, 1, 0): -1})])   # x2 - x1
    reg, m = regularize(sys2, 2)
    assert m.is_identity()
    assert reg.equations[0] == sys2.equations[0]


def test_regularize_needs_substitution():
    # x1^2 - lam vanishes on the x2 axis: a shear is required
    sys2 = sq_system([P(2, {(0, 2, 0): 1, (1, 0, 0): -1}),
                      P(2, {(0, 0, 1): 1, (0, 1, 0): -1})])
    reg, m = regularize(sys2, 2)
    assert not m.is_identity()
    for f in reg.equations:
        # f(0, 0, t) must be a nonzero polynomial in t
        assert any(e[0] == 0 and e[1] == 0 and e[2] > 0 for e in f.terms)


def test_regularize_skip_moves_on():
    sys2 = sq_system([P(2, {(0, 2, 0): 1, (1, 0, 0): -1}),
                      P(2, {(0, 0, 1): 1, (0, 1, 0): -1})])
    _, m0 = regularize(sys2, 2)
    _, m1 = regularize(sys2, 2, skip=1)
    assert m0.matrix != m1.matrix


def test_regularize_impossible():
    # an equation in lambda alone depends on no unknown
    sys2 = sq_system([P(1, {(1, 0): 1})])
    with pytest.raises(RegularizationError):
        regularize(sys2, 1)


def test_jet_compose_full():
    f = P(1, {(0, 2): 1, (1, 0): -1})    # x^2 - lam
    r = jet_compose(f, {1: jet(2, [(1, 1)], trunc=3)})
    assert r.is_zero()
    r2 = jet_compose(f, {1: jet(1, [(1, 1)], trunc=3)})
    assert r2.valuation() == 1


def test_jet_compose_free_var():
    f = P(2, {(0, 0, 2): 1, (0, 1, 0): -1})    # x2^2 - x1
    ujp = jet_compose(f, {1: jet(1, [(2, 1)], trunc=5)}, free_var=2)
    assert ujp.degree == 2
    assert ujp.coeffs[0].terms == ((2, Fraction(-1)),)


def test_jet_compose_guards():
    f = P(2, {(0, 0, 2): 1, (0, 1, 0): -1})
    with pytest.raises(Exception):
        jet_compose(f, {})                      # missing assignment
    with pytest.raises(TruncationError):
        jet_compose(f, {1: jet(1, [(1, 1)], trunc=0)}, free_var=2)


def test_residual_valuation():
    f = P(1, {(0, 2): 1, (2, 0): -1})    # x^2 - lam^2
    assert residual_valuation(f, {1: jet(1, [(1, 1)])}) is None
    assert residual_valuation(f, {1: jet(1, [(1, 2)])}) == 2
