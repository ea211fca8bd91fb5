"""Resultants and GCD degree tests over the fraction field of the remaining
variables, plus the per-edge resultant systems driving the elimination
chains.

Univariate-in-one-unknown polynomials are handled as dense coefficient
lists whose entries are MultiPolys (the coefficient ring).  Swell is
controlled by the subresultant PRS; a fraction-free Sylvester determinant
serves as the independent cross-check.
"""

from fractions import Fraction
from itertools import combinations

from .errors import DegenerateEdgeError, JetsolveError
from .multipoly import (MultiPoly, UniView, dense_pseudo_rem, divexact,
                        mpoly_gcd, primitive)
from .prep import PolySystem


def _dense(view):
    return [c for c in view.coeffs]


def _trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _deg(c):
    return len(c) - 1


def _one(nvars):
    return MultiPoly.const(Fraction(1), nvars)


def _inner_subresultants(f, g, nvars):
    """Subresultant PRS and scalar subresultants (Brown's algorithm) over
    the MultiPoly coefficient ring."""
    f, g = _trim(list(f)), _trim(list(g))
    n, m = _deg(f), _deg(g)
    if n < m:
        f, g = g, f
        n, m = m, n
    if not f:
        return [], []
    if not g:
        return [f], [_one(nvars)]
    prs = [f, g]
    d = n - m
    sign = _one(nvars) if (d + 1) % 2 == 0 else -_one(nvars)
    h = dense_pseudo_rem(f, g, nvars)
    h = [c * sign for c in h]
    lc = g[-1]
    c = lc ** d
    scalars = [_one(nvars), c]
    c = -c
    while h:
        k = _deg(h)
        prs.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * (c ** d)
        h = dense_pseudo_rem(f, g, nvars)
        h = [divexact(x, b) for x in h]
        lc = g[-1]
        if d > 1:
            c = divexact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        scalars.append(-c)
    return prs, scalars


def resultant_prs(p, q):
    """Resultant via subresultant PRS.  p, q are UniViews in the same
    distinguished unknown, both of positive degree."""
    _check_views(p, q)
    nvars = p.base.nvars
    n, m = p.degree, q.degree
    f, g = _dense(p), _dense(q)
    swap_sign = (n * m) % 2 == 1 and n < m
    prs, scalars = _inner_subresultants(f, g, nvars)
    if _deg(prs[-1]) > 0:
        return MultiPoly.zero(nvars)
    res = scalars[-1]
    return -res if swap_sign else res


def sylvester_matrix(p, q):
    """Sylvester matrix with the first deg(q) rows carrying p's
    coefficients (highest power first)."""
    _check_views(p, q)
    n, m = p.degree, q.degree
    nvars = p.base.nvars
    zero = MultiPoly.zero(nvars)
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    size = n + m
    rows = []
    for i in range(m):
        rows.append([zero] * i + pc + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + qc + [zero] * (size - m - 1 - i))
    return rows


def resultant_sylvester(p, q):
    """Fraction-free (Bareiss) determinant of the Sylvester matrix; exact
    cross-check route for resultant_prs."""
    rows = sylvester_matrix(p, q)
    nvars = p.base.nvars
    size = len(rows)
    if size == 0:
        return _one(nvars)
    a = [row[:] for row in rows]
    sign = 1
    prev = _one(nvars)
    for k in range(size - 1):
        if a[k][k].is_zero():
            piv = next((r for r in range(k + 1, size)
                        if not a[r][k].is_zero()), None)
            if piv is None:
                return MultiPoly.zero(nvars)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divexact(num, prev)
            a[i][k] = MultiPoly.zero(nvars)
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return -det if sign < 0 else det


def resultant(p, q):
    """Sylvester resultant of two univariate views; zero iff p and q share
    a factor of positive degree in the distinguished unknown over the
    fraction field of the remaining variables."""
    return resultant_prs(p, q)


def _check_views(p, q):
    if p.var != q.var:
        raise JetsolveError("views use different distinguished unknowns")
    if p.degree < 1 or q.degree < 1:
        raise JetsolveError("constant in eliminated variable")


class GcdReport:
    """Degree (in the eliminated unknown, over the fraction field of the
    remaining variables) of the GCD of several polynomials, with a
    divisibility-verified witness when the degree is positive."""

    def __init__(self, degree, witness=None):
        self.degree = degree
        self.witness = witness

    def __repr__(self):
        return f"GcdReport(degree={self.degree})"


def _pp_in_var(dense, var, nvars):
    """Primitive part w.r.t. the distinguished unknown: divide out the GCD
    of the MultiPoly coefficients."""
    dense = _trim(list(dense))
    if not dense:
        return dense
    cont = MultiPoly.zero(nvars)
    for c in dense:
        cont = mpoly_gcd(cont, c)
    if cont.is_constant():
        return dense
    return [divexact(c, cont) for c in dense]


def _gcd_dense(f, g, nvars, var):
    """GCD of two dense lists over the fraction field of the remaining
    variables (primitive part of the last nonzero subresultant remainder)."""
    f, g = _trim(list(f)), _trim(list(g))
    if not f:
        return g
    if not g:
        return f
    if _deg(f) == 0 or _deg(g) == 0:
        return [_one(nvars)]
    prs, _ = _inner_subresultants(f, g, nvars)
    last = prs[-1]
    if _deg(last) == 0:
        return [_one(nvars)]
    return _pp_in_var(last, var, nvars)


def gcd_report(views):
    """GCD degree s and witness for two or more univariate views in the
    same distinguished unknown."""
    if len(views) < 2:
        raise JetsolveError("gcd_report needs at least two polynomials")
    var = views[0].var
    if any(v.var != var for v in views):
        raise JetsolveError("views use different distinguished unknowns")
    nvars = views[0].base.nvars
    g = _pp_in_var(_dense(views[0]), var, nvars)
    for v in views[1:]:
        g = _gcd_dense(g, _pp_in_var(_dense(v), var, nvars), nvars, var)
    s = _deg(g)
    if s <= 0:
        return GcdReport(0)
    witness = MultiPoly.zero(nvars)
    for k, c in enumerate(g):
        witness = witness + c * MultiPoly.var(var, nvars, k)
    witness = primitive(witness)
    wd = _trim(list(UniView(witness, var).coeffs))
    for v in views:
        if _trim(dense_pseudo_rem(_dense(v), wd, nvars)):
            raise JetsolveError("gcd witness failed the divisibility check")
    return GcdReport(s, witness)


# -- resultant systems -----------------------------------------------------

def _project_drop_top(f):
    """Remove the (degree-zero) top unknown coordinate from the exponent
    vectors."""
    nvars = f.nvars
    out = {}
    for exps, c in f.terms.items():
        if exps[-1] != 0:
            raise JetsolveError("resultant still involves the eliminated "
                                "unknown")
        out[exps[:-1]] = c
    return MultiPoly(nvars - 1, out)


def _edge_resultant(system, j1, j2, var):
    p = UniView(system.equations[j1 - 1], var)
    q = UniView(system.equations[j2 - 1], var)
    if p.degree < 1 or q.degree < 1:
        raise JetsolveError(
            f"equation {j1 if p.degree < 1 else j2} is constant in the "
            "eliminated variable")
    r = resultant(p, q)
    if r.is_zero():
        raise DegenerateEdgeError((j1, j2), level=system.level)
    if var == system.level:
        r = _project_drop_top(r)
    return r.normalize_lambda()[0]


def tree_resultant_system(system, tree, var=None):
    """One resultant per tree edge: n equations with n vertices become n-1
    equations in one fewer unknown, each lambda-normalized."""
    if var is None:
        var = system.level
    if tree.n != len(system.equations):
        raise JetsolveError("tree size does not match the system")
    eqs = [_edge_resultant(system, j1, j2, var)
           for j1, j2 in sorted(tree.edges)]
    return PolySystem(eqs, system.level - 1)


def classical_resultant_system(system, var=None):
    """All pairwise resultants: the over-determined classical reduction
    (C(n,2) equations; a single one when n = 2)."""
    if var is None:
        var = system.level
    n = len(system.equations)
    eqs = [_edge_resultant(system, j1, j2, var)
           for j1, j2 in combinations(range(1, n + 1), 2)]
    return PolySystem(eqs, system.level - 1)
