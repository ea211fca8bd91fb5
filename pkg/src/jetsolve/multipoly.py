"""Sparse multivariate polynomials in the parameter lambda and unknowns
x_1..x_n, with exact rational or high-precision complex coefficients.

Exponent vectors are tuples of length nvars+1; index 0 is the lambda
exponent, index i (1-based) the exponent of x_i.  No zero coefficients are
ever stored.  Instances are immutable by convention: no method mutates
self.
"""

from fractions import Fraction
from math import gcd

from .coeffs import (coeff_conj, coeff_is_zero, is_exact, to_mpc)
from .errors import ZeroEquationError


class MultiPoly:

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars + 1:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if isinstance(c, int):
                c = Fraction(c)
            if not coeff_is_zero(c):
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def const(cls, c, nvars):
        return cls(nvars, {(0,) * (nvars + 1): c})

    @classmethod
    def lam(cls, nvars, power=1):
        e = [0] * (nvars + 1)
        e[0] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def var(cls, i, nvars, power=1):
        """x_i (1-based unknown index)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"unknown index {i} out of range")
        e = [0] * (nvars + 1)
        e[i] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    # -- predicates and views ---------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_exact(self):
        return all(is_exact(c) for c in self.terms.values())

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * (self.nvars + 1), Fraction(0))

    def degree(self, var):
        """Degree in one variable (0 = lambda); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def lambda_valuation(self):
        """Smallest lambda exponent present; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(e[0] for e in self.terms)

    def depends_on(self, var):
        return any(e[var] > 0 for e in self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = "*".join(
                ([f"l^{exps[0]}"] if exps[0] else [])
                + [f"x{i}^{exps[i]}" for i in range(1, len(exps)) if exps[i]])
            bits.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(bits)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.nvars)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.nvars)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k):
        out = MultiPoly.const(Fraction(1), self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})

    def derivative(self, var):
        out = {}
        for exps, c in self.terms.items():
            k = exps[var]
            if k == 0:
                continue
            e = list(exps)
            e[var] = k - 1
            e = tuple(e)
            out[e] = out.get(e, Fraction(0)) + c * k
        return MultiPoly(self.nvars, out)

    def conjugate(self):
        return MultiPoly(self.nvars,
                         {e: coeff_conj(c) for e, c in self.terms.items()})

    def shift_lambda(self, k):
        """Multiply by lambda^k (k may be negative if every term allows it)."""
        out = {}
        for exps, c in self.terms.items():
            if exps[0] + k < 0:
                raise ValueError("negative lambda exponent")
            e = (exps[0] + k,) + exps[1:]
            out[e] = c
        return MultiPoly(self.nvars, out)

    def evaluate(self, values):
        """Numeric evaluation; values is a sequence of length nvars+1
        (lambda first)."""
        vals = [to_mpc(v) for v in values]
        total = to_mpc(0)
        for exps, c in self.terms.items():
            term = to_mpc(c)
            for v, k in zip(vals, exps):
                if k:
                    term *= v ** k
            total += term
        return total

    # -- lambda-power normalization ---------------------------------------

    def normalize_lambda(self):
        """Factor out the largest common lambda power: self = lam^k * g.

        Returns (g, k).  Raises ZeroEquationError on the zero polynomial.
        """
        if not self.terms:
            raise ZeroEquationError("zero equation")
        k = min(e[0] for e in self.terms)
        if k == 0:
            return self, 0
        out = {(e[0] - k,) + e[1:]: c for e, c in self.terms.items()}
        return MultiPoly(self.nvars, out), k


class UniView:
    """A MultiPoly viewed as a univariate polynomial in one distinguished
    unknown, with MultiPoly coefficients in the remaining variables."""

    def __init__(self, base, var):
        if not 1 <= var <= base.nvars:
            raise ValueError(f"unknown index {var} out of range")
        self.base = base
        self.var = var
        deg = base.degree(var)
        coeffs = [dict() for _ in range(deg + 1)] if deg >= 0 else []
        for exps, c in base.terms.items():
            e = list(exps)
            k = e[self.var]
            e[self.var] = 0
            coeffs[k][tuple(e)] = c
        self.coeffs = [MultiPoly(base.nvars, d) for d in coeffs]

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def reassemble(self):
        total = MultiPoly.zero(self.base.nvars)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * MultiPoly.var(self.var, self.base.nvars, k)
        return total


# -- exact division and gcd over the rational-coefficient ring -------------

def _lead_exps(p):
    return max(p.terms)


def divexact(a, b):
    """Exact multivariate division a / b (exact rational coefficients).

    Raises ValueError when b does not divide a.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    rem = dict(a.terms)
    out = {}
    be = _lead_exps(b)
    bc = b.terms[be]
    while rem:
        re = max(rem)
        rc = rem[re]
        qe = tuple(x - y for x, y in zip(re, be))
        if any(e < 0 for e in qe):
            raise ValueError("inexact polynomial division")
        qc = Fraction(rc) / bc if is_exact(rc) and is_exact(bc) else rc / bc
        out[qe] = qc
        for exps, c in b.terms.items():
            e = tuple(x + y for x, y in zip(qe, exps))
            v = rem.get(e, Fraction(0)) - qc * c
            if coeff_is_zero(v):
                rem.pop(e, None)
            else:
                rem[e] = v
    return MultiPoly(a.nvars, out)


def rational_content(p):
    """Rational c > 0 such that p / c has coprime integer coefficients."""
    nums = [c.numerator for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    return Fraction(g, l)


def normalize_sign(p):
    """Scale so the lexicographically leading coefficient is positive."""
    if p.is_zero():
        return p
    if p.terms[_lead_exps(p)] < 0:
        return -p
    return p


def primitive(p):
    """Integer-primitive, sign-normalized associate of an exact MultiPoly."""
    if p.is_zero():
        return p
    c = rational_content(p)
    return normalize_sign(p.scale(1 / c))


def _main_variable(a, b):
    """Highest variable index (lambda = 0) appearing with positive degree."""
    for var in range(max(a.nvars, 0), -1, -1):
        if a.degree(var) > 0 or b.degree(var) > 0:
            return var
    return None


def _to_dense(p, var):
    """Dense coefficient list in `var`; entries are MultiPolys free of var."""
    deg = p.degree(var)
    coeffs = [dict() for _ in range(deg + 1)]
    for exps, c in p.terms.items():
        e = list(exps)
        k = e[var]
        e[var] = 0
        coeffs[k][tuple(e)] = c
    return [MultiPoly(p.nvars, d) for d in coeffs]


def _from_dense(coeffs, var, nvars):
    out = {}
    for k, c in enumerate(coeffs):
        for exps, v in c.terms.items():
            e = list(exps)
            e[var] = k
            out[tuple(e)] = v
    return MultiPoly(nvars, out)


def _dense_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def dense_pseudo_rem(f, g, nvars):
    """Pseudo-remainder of dense coefficient lists (coefficients in the
    MultiPoly ring)."""
    f = list(f)
    n, m = len(f) - 1, len(g) - 1
    if m < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    lc = g[-1]
    steps = n - m + 1
    while len(f) - 1 >= m and f:
        k = len(f) - 1 - m
        coef = f[-1]
        f = [c * lc for c in f[:-1]]
        for i, gc in enumerate(g[:-1]):
            f[i + k] = f[i + k] - coef * gc
        f = _dense_trim(f)
        steps -= 1
    for _ in range(max(steps, 0)):
        f = [c * lc for c in f]
    return _dense_trim(f)


def mpoly_gcd(a, b):
    """GCD of two exact MultiPolys, primitive and sign-normalized.

    Recursive primitive PRS: pick the highest variable present, split into
    content and primitive part, run pseudo-remainders on primitive parts.
    """
    if a.is_zero():
        return primitive(b)
    if b.is_zero():
        return primitive(a)
    var = _main_variable(a, b)
    if var is None:
        return MultiPoly.const(Fraction(1), a.nvars)

    def content_pp(p):
        dense = _to_dense(p, var)
        cont = MultiPoly.zero(p.nvars)
        for c in dense:
            cont = mpoly_gcd(cont, c)
        pp = divexact(p, cont) if not cont.is_constant() else primitive(p)
        if cont.is_constant():
            cont = MultiPoly.const(Fraction(1), p.nvars)
        return cont, primitive(pp)

    ca, pa = content_pp(a)
    cb, pb = content_pp(b)
    cont = mpoly_gcd(ca, cb)

    f, g = _to_dense(pa, var), _to_dense(pb, var)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = dense_pseudo_rem(f, g, a.nvars)
        f, g = g, r
        if g:
            gp = content_pp(_from_dense(g, var, a.nvars))[1]
            g = _to_dense(gp, var)
    if len(f) <= 1:
        # primitive parts are coprime in var; only the content survives
        return primitive(cont)
    gcd_pp = content_pp(_from_dense(f, var, a.nvars))[1]
    return primitive(cont * gcd_pp)


def squarefree_split(p, var):
    """(repeated, reduced) with p = repeated * reduced up to a unit, where
    repeated = gcd(p, dp/dvar).  Exact coefficients only."""
    d = mpoly_gcd(p, p.derivative(var))
    if d.is_constant():
        return MultiPoly.const(Fraction(1), p.nvars), primitive(p)
    return d, divexact(primitive(p), d)
