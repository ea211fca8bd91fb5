"""Scalar engine: Newton polygon, branch expansion, simplicity certificates
and jet extension for one polynomial equation f(lambda, x) = 0.

Bivariate polynomials are MultiPoly instances with nvars=1: exponent index
0 is lambda (or a rescaled local parameter mu), index 1 the unknown.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

import mpmath
from mpmath import mp

from .coeffs import coeff_is_zero, is_exact, to_mpc, zero_tol
from .errors import (NotRegularError, PrecisionError, TruncationError,
                     ZeroEquationError)
from .jets import PuiseuxJet, jet_sort_key
from .multipoly import MultiPoly, divexact, primitive, squarefree_split
from .prep import jet_compose

MAX_RECURSION_DEPTH = 64


@dataclass
class PolygonEdge:
    slope: Fraction              # exponent p/q of the leading branch term
    support: list                # (k_lambda, k_x) pairs on the edge
    char_coeffs: list            # characteristic polynomial, index = power

    @property
    def p(self):
        return self.slope.numerator

    @property
    def q(self):
        return self.slope.denominator


@dataclass
class SimplicityCertificate:
    r: int                       # defining number: terms fixed before the
                                 # linear recursion takes over
    alpha: object                # leading coefficient of df/dx on the branch
    alpha_order: Fraction        # its lambda-valuation


def newton_polygon(f):
    """Edges of the lower convex hull of the support of f with negative
    slope in the (k_x, k_lambda) plane: one edge per leading exponent of a
    small branch x ~ c*lambda^slope."""
    if f.is_zero():
        raise ZeroEquationError("zero equation")
    if not any(e[0] == 0 for e in f.terms):
        raise NotRegularError("not regular in x")
    pts = {}
    for (j, i) in f.terms:
        if i not in pts or j < pts[i]:
            pts[i] = j
    points = sorted(pts.items())          # (i, j) with minimal j per i

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    hull = []
    for pt in points:
        while len(hull) >= 2 and cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)

    edges = []
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        if j2 >= j1:
            continue                      # nonpositive slope: not a small branch
        rho = Fraction(j1 - j2, i2 - i1)
        support = []
        char = {}
        for (j, i), c in f.terms.items():
            if i1 <= i <= i2 and Fraction(j - j1, 1) == -rho * (i - i1):
                support.append((j, i))
                char[i - i1] = char.get(i - i1, Fraction(0)) + c
        support.sort()
        coeffs = [char.get(k, Fraction(0)) for k in range(i2 - i1 + 1)]
        edges.append(PolygonEdge(rho, support, coeffs))
    return edges


# -- univariate root finding ----------------------------------------------

def _divisors(n):
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def _rational_roots(coeffs):
    """All rational roots (with multiplicity 1; caller deflates) of a
    squarefree integer-coefficient polynomial."""
    a0, an = coeffs[0], coeffs[-1]
    if abs(a0) > 10 ** 12 or abs(an) > 10 ** 12:
        return []
    roots = []
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand ** k for k, c in enumerate(coeffs)) == 0:
                    if cand not in roots:
                        roots.append(cand)
    return roots


def _frac_gcd_univ(a, b):
    """Monic gcd of univariate Fraction coefficient lists."""
    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        r = list(a)
        while len(r) >= len(b):
            k = len(r) - len(b)
            fac = r[-1] / b[-1]
            for i, bc in enumerate(b):
                r[i + k] -= fac * bc
            r = trim(r[:-1] + [])
            r = trim(r)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _frac_derivative(coeffs):
    return [c * k for k, c in enumerate(coeffs)][1:]


def _squarefree_factors(coeffs):
    """Yun's algorithm over Q: list of (factor, multiplicity)."""
    out = []
    g = _frac_gcd_univ(coeffs, _frac_derivative(coeffs))
    if len(g) == 1:
        return [(coeffs, 1)]
    c = _poly_divexact(coeffs, g)
    d = _poly_sub(_poly_divexact(_frac_derivative(coeffs), g),
                  _frac_derivative(c))
    i = 1
    while len(c) > 1:
        p = _frac_gcd_univ(c, d)
        if len(p) > 1:
            out.append((p, i))
        c2 = _poly_divexact(c, p)
        d = _poly_sub(_poly_divexact(d, p), _frac_derivative(c2))
        c = c2
        i += 1
    return out


def _poly_divexact(a, b):
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(x != 0 for x in a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        fac = a[-1] / b[-1]
        out[k] = fac
        for i, bc in enumerate(b):
            a[i + k] -= fac * bc
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else Fraction(0))
            - (b[k] if k < len(b) else Fraction(0)) for k in range(n)]


def poly_roots(coeffs):
    """Roots with multiplicities of a univariate polynomial given as a
    coefficient list (index = power).  Exact rational roots stay exact;
    the rest are mpmath.mpc at the working precision."""
    coeffs = list(coeffs)
    while coeffs and coeff_is_zero(coeffs[-1]):
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    v = 0
    while coeff_is_zero(coeffs[0]):
        coeffs.pop(0)
        v += 1
    if v:
        roots.append((Fraction(0), v))

    if all(is_exact(c) for c in coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        for fac, mult in _squarefree_factors(coeffs):
            # primitive integer form for the rational-root scan
            den = 1
            for c in fac:
                den = den * c.denominator // gcd(den, c.denominator)
            ints = [int(c * den) for c in fac]
            g = 0
            for c in ints:
                g = gcd(g, c)
            ints = [c // g for c in ints] if g else ints
            work = [Fraction(c) for c in ints]
            for r in _rational_roots(ints):
                # deflate all occurrences (squarefree: exactly one)
                work = _poly_divexact(work, [-r, Fraction(1)])
                roots.append((r, mult))
            while work and work[-1] == 0:
                work.pop()
            if len(work) > 1:
                roots.extend((z, mult) for z in _numeric_roots(work))
    else:
        for z in _numeric_roots(coeffs):
            roots.append((z, 1))
        roots = _cluster(roots)
    return roots


def _numeric_roots(coeffs):
    cs = [to_mpc(c) for c in reversed(coeffs)]
    try:
        zs = mpmath.polyroots(cs, maxsteps=200, extraprec=mp.prec // 2,
                              error=False)
    except mpmath.libmp.NoConvergence as exc:
        raise PrecisionError("root finding did not converge; "
                             "increase the working precision") from exc
    return [mpmath.mpc(z) for z in zs]


def _cluster(roots):
    """Merge numerically coincident roots into multiplicities."""
    tol = zero_tol() ** Fraction(1, 2)
    out = []
    for z, m in roots:
        for i, (w, mw) in enumerate(out):
            if is_exact(z) == is_exact(w) and (
                    z == w if is_exact(z) else abs(z - w) < tol):
                out[i] = (w, mw + m)
                break
        else:
            out.append((z, m))
    return out


# -- branch expansion -----------------------------------------------------

def _subst_edge(f, p, q, c):
    """h(nu, z) with f(nu^q, nu^p (c + z)) = nu^e * h; returns h."""
    out = {}
    for (j, i), a in f.terms.items():
        base = q * j + p * i
        for k in range(i + 1):
            coef = a * comb(i, k) * (c ** (i - k) if i - k else 1)
            if coeff_is_zero(coef):
                continue
            key = (base, k)
            v = out.get(key)
            out[key] = coef if v is None else v + coef
    h = MultiPoly(1, out)
    return h.normalize_lambda()[0]


def _fast_path(f, target):
    """Unique small branch of f when df/dx(0,0) is a unit: the linear
    recursion of the simple case.  Returns a jet dict {mu_exp: coeff}."""
    fx = f.derivative(1)
    alpha = fx.terms.get((0, 0))
    y = {}
    cap = max(int(target), 0)
    guard = 0
    while True:
        res = _eval_shift(f, y, cap)
        if not res:
            return y, True
        u = min(res)
        if u > cap:
            return y, False
        gamma = -res[u] / alpha if is_exact(res[u]) and is_exact(alpha) \
            else -to_mpc(res[u]) / to_mpc(alpha)
        y[u] = y.get(u, 0) + gamma
        # re-read alpha along the current jet for robustness
        ares = _eval_shift(fx, y, cap)
        alpha = ares[min(ares)]
        guard += 1
        if guard > 4 * (cap + len(f.terms) + 2):
            raise PrecisionError("linear recursion failed to terminate")


def _eval_shift(f, y, cap):
    """f(mu, y(mu)) truncated at mu^cap, with y a jet dict."""
    powers = {0: {0: Fraction(1)}}

    def ypow(k):
        if k not in powers:
            prev = ypow(k - 1)
            out = {}
            for e1, c1 in prev.items():
                for e2, c2 in y.items():
                    e = e1 + e2
                    if e > cap:
                        continue
                    v = out.get(e)
                    out[e] = c1 * c2 if v is None else v + c1 * c2
            powers[k] = {e: c for e, c in out.items() if not coeff_is_zero(c)}
        return powers[k]

    res = {}
    for (j, i), a in f.terms.items():
        if j > cap:
            continue
        for e, c in ypow(i).items():
            if j + e > cap:
                continue
            v = res.get(j + e)
            res[j + e] = a * c if v is None else v + a * c
    return {e: c for e, c in res.items() if not coeff_is_zero(c)}


def _expand(f, target, depth):
    """All small branches of f(s, x) = 0 as jets in the local parameter s.

    Returns a list of (PuiseuxJet, multiplicity).  target is the exponent
    order to which jets are carried; branches with unresolved multiplicity
    are pushed deeper until they separate or the depth guard trips.
    """
    if depth > MAX_RECURSION_DEPTH:
        raise PrecisionError(
            "branch recursion depth exceeded: numerically close roots could "
            "not be separated; increase precision or truncation order")
    f = f.normalize_lambda()[0]
    results = []
    v = min(e[1] for e in f.terms)
    if v > 0:
        results.append((PuiseuxJet.zero(trunc=max(target, 0)), v))
        f = MultiPoly(1, {(j, i - v): c for (j, i), c in f.terms.items()})
    if f.degree(1) <= 0:
        return results
    const = f.terms.get((0, 0))
    if const is not None and not coeff_is_zero(const):
        return results

    if not coeff_is_zero(f.terms.get((0, 1), Fraction(0))):
        y, exhausted = _fast_path(f, target)
        results.append((PuiseuxJet(1, list(y.items()),
                                   trunc=max(target, 0)), 1))
        return results

    for edge in newton_polygon(f):
        p, q = edge.p, edge.q
        for c, mult in poly_roots(edge.char_coeffs):
            if coeff_is_zero(c):
                continue                      # zero root handled by x^v split
            h = _subst_edge(f, p, q, c)
            subtarget = q * Fraction(target) - p
            if mult == 1 and subtarget <= 0:
                results.append((PuiseuxJet(q, [(p, c)], trunc=max(target, 0)),
                                1))
                continue
            for sub, m in _expand(h, subtarget, depth + 1):
                r = sub.ram
                terms = [(p * r, c)] + [(p * r + n, g) for n, g in sub.terms]
                results.append((PuiseuxJet(q * r, terms,
                                           trunc=max(target, 0)), m))
    return results


def _merge_branches(groups):
    out = []
    for jet, mult in groups:
        for i, (j2, m2) in enumerate(out):
            if jet == j2:
                out[i] = (j2, m2 + mult)
                break
        else:
            out.append((jet, mult))
    return out


def puiseux_branches(f, T):
    """All small-solution branches of f(lambda, x) = 0 with multiplicities,
    truncated at order >= T."""
    T = Fraction(T)
    if f.is_zero():
        raise ZeroEquationError("zero equation")
    f = f.normalize_lambda()[0]
    if not any(e[0] == 0 for e in f.terms):
        raise NotRegularError("not regular in x")
    if f.degree(1) <= 0:
        return []
    const = f.terms.get((0, 0))
    if const is not None and not coeff_is_zero(const):
        return []

    if f.is_exact():
        rep, red = squarefree_split(primitive(f), 1)
        if rep.degree(1) > 0:
            distinct = puiseux_branches(red, T)
            repeated = puiseux_branches(rep, T)
            merged = []
            for jet, m in distinct:
                extra = sum(m2 for j2, m2 in repeated if j2 == jet)
                merged.append((jet, m + extra))
            return sorted(merged, key=lambda bm: jet_sort_key(bm[0]))

    branches = _merge_branches(_expand(f, T, 0))
    return sorted(branches, key=lambda bm: jet_sort_key(bm[0]))


# -- simplicity and extension ---------------------------------------------

def _shifted_poly(f, branch):
    """f(mu^ram, partial(mu) + y) as a MultiPoly in (mu, y), with partial
    the full term list of `branch`."""
    ram = branch.ram
    part = dict(branch.terms)
    out = {}
    for (j, i), a in f.terms.items():
        for k in range(i + 1):
            coef0 = a * comb(i, k)
            # expand partial^(i-k)
            acc = {0: coef0}
            for _ in range(i - k):
                nxt = {}
                for e1, c1 in acc.items():
                    for e2, c2 in part.items():
                        e = e1 + e2
                        v = nxt.get(e)
                        nxt[e] = c1 * c2 if v is None else v + c1 * c2
                acc = nxt
            for e, cc in acc.items():
                key = (ram * j + e, k)
                v = out.get(key)
                out[key] = cc if v is None else v + cc
    return MultiPoly(1, out)


def _unit_continuation(h):
    """True when the small-branch polygon of h(mu, y) pins a unique simple
    continuation: a single edge of horizontal extent one (or an exactly
    vanishing residual)."""
    if h.is_zero() or not h.terms:
        return True
    h = h.normalize_lambda()[0]
    if all(coeff_is_zero(c) for (j, i), c in h.terms.items() if i == 0):
        # residual vanishes identically: y = 0 continuation; unique iff the
        # y-valuation is one
        return min(i for (j, i) in h.terms) == 1
    try:
        edges = newton_polygon(h)
    except NotRegularError:
        return False
    if len(edges) != 1:
        return False
    e = edges[0]
    return e.support[-1][1] - e.support[0][1] == 1


def simplicity_certificate(f, branch):
    """Certificate (r, alpha, alpha_order) that `branch` is a simple root of
    f, or the string "not simple"."""
    fx = f.derivative(1)
    exact_all = f.is_exact() and branch.is_exact_coeffs() \
        and branch.trunc is None
    probe = branch if branch.trunc is not None else \
        PuiseuxJet(branch.ram, branch.terms, None)
    dres = jet_compose(fx, {1: probe},
                       order=None if exact_all else branch.trunc)
    if dres.is_zero():
        if exact_all:
            return "not simple"
        raise TruncationError("extend jet and retry",
                              required_order=(branch.trunc or 0) + 1)
    alpha = dres.leading_coeff()
    alpha_order = dres.valuation()
    res = jet_compose(f, {1: probe},
                      order=None if exact_all else branch.trunc)
    guarantee = res.valuation()
    if guarantee is not None and alpha_order >= guarantee:
        return "not simple"
    if branch.trunc is not None and alpha_order >= branch.trunc:
        raise TruncationError("extend jet and retry",
                              required_order=2 * alpha_order)

    r = len(branch.terms)
    for j in range(len(branch.terms) + 1):
        partial = PuiseuxJet(branch.ram, branch.terms[:j], None,
                             normalize=False)
        if _unit_continuation(_shifted_poly(f, partial)):
            r = j
            break
    return SimplicityCertificate(r=r, alpha=alpha,
                                 alpha_order=Fraction(alpha_order))


def extend_jet(f, branch, cert, order):
    """Continue a certified simple branch to the given truncation order by
    the linear recursion; the continuation is unique."""
    order = Fraction(order)
    if branch.trunc is not None and order <= branch.trunc:
        return branch.truncate(order)
    fx = f.derivative(1)
    cur = PuiseuxJet(branch.ram, branch.terms, None)
    guard = 0
    last_exp = Fraction(-1)
    while True:
        res = jet_compose(f, {1: cur}, order=order)
        val = res.valuation()
        if val is None or val > order:
            return PuiseuxJet(cur.ram, cur.terms, order)
        ares = jet_compose(fx, {1: cur}, order=order)
        aval = ares.valuation()
        if aval is None:
            raise TruncationError("truncation ceiling", required_order=order)
        u = val - aval
        if u <= last_exp:
            raise TruncationError("truncation ceiling", required_order=order)
        last_exp = u
        alpha = ares.leading_coeff()
        gamma = (-Fraction(res.leading_coeff()) / alpha
                 if is_exact(res.leading_coeff()) and is_exact(alpha)
                 else -to_mpc(res.leading_coeff()) / to_mpc(alpha))
        cur = cur + PuiseuxJet.monomial(gamma, u.numerator, u.denominator)
        guard += 1
        if guard > 16 * (int(order) + len(f.terms) + 2):
            raise PrecisionError("jet extension failed to terminate")
