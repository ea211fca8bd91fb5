"""System-level preprocessing: lambda-power normalization, linear
regularization of the distinguished unknown, and jet substitution."""

import random
from fractions import Fraction
from math import lcm

from .coeffs import coeff_is_zero, is_exact
from .errors import (JetsolveError, RegularizationError, TruncationError,
                     ZeroEquationError)
from .jets import PuiseuxJet, common_ram, min_trunc
from .multipoly import MultiPoly


class PolySystem:
    """A finite list of nonzero equations in lambda and x_1..x_level."""

    def __init__(self, equations, level=None):
        equations = list(equations)
        if not equations:
            raise ValueError("empty system")
        if level is None:
            level = equations[0].nvars
        for f in equations:
            if f.nvars != level:
                raise ValueError("mixed variable counts in one system")
            if f.is_zero():
                raise ZeroEquationError("zero equation")
        self.equations = equations
        self.level = level

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def normalized(self):
        """Each equation divided by its highest common lambda power."""
        return PolySystem([f.normalize_lambda()[0] for f in self.equations],
                          self.level)


def normalize_lambda(f):
    """Factor f = lambda^k * g with g not divisible by lambda."""
    return f.normalize_lambda()


class LinearMap:
    """Invertible linear substitution of the unknowns, x = M y (lambda is
    untouched).  Entries are small rationals."""

    def __init__(self, matrix):
        self.n = len(matrix)
        self.matrix = [[Fraction(v) for v in row] for row in matrix]

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    def is_identity(self):
        return all(self.matrix[i][j] == (i == j)
                   for i in range(self.n) for j in range(self.n))

    def inverse(self):
        n = self.n
        a = [row[:] + [Fraction(i == j) for j in range(n)]
             for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            a[col] = [v * inv for v in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    fac = a[r][col]
                    a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
        return LinearMap([row[n:] for row in a])

    def apply_poly(self, f):
        """f(lambda, x) -> f(lambda, M y) in the new unknowns y."""
        n = f.nvars
        subs = []
        for i in range(n):
            p = MultiPoly.zero(n)
            for j in range(n):
                if self.matrix[i][j] != 0:
                    p = p + MultiPoly.var(j + 1, n).scale(self.matrix[i][j])
            subs.append(p)
        cache = {}

        def sub_pow(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = subs[i] ** k
            return cache[(i, k)]

        total = MultiPoly.zero(n)
        for exps, c in f.terms.items():
            term = MultiPoly.lam(n, exps[0]).scale(c)
            for i in range(n):
                if exps[i + 1]:
                    term = term * sub_pow(i, exps[i + 1])
            total = total + term
        return total

    def apply_jets(self, jets):
        """Map a solution vector of the transformed system back: x = M y."""
        out = []
        for i in range(self.n):
            acc = PuiseuxJet.zero(min_trunc(jets))
            for j in range(self.n):
                if self.matrix[i][j] != 0:
                    acc = acc + jets[j].scale(self.matrix[i][j])
            out.append(acc)
        return out


def _slice_at_axis(f, var, coeffs):
    """Univariate restriction f(0, c_1*t, ..., t, ..., c_n*t) with t in
    position var and c_i multiplying the other unknowns; returns dict
    power -> coeff."""
    out = {}
    for exps, v in f.terms.items():
        if exps[0] != 0:
            continue
        p = sum(exps[1:])
        coef = v
        for i in range(1, len(exps)):
            if i == var or exps[i] == 0:
                continue
            c = coeffs[i]
            if c == 0:
                coef = None
                break
            coef = coef * Fraction(c) ** exps[i]
        if coef is None:
            continue
        out[p] = out.get(p, Fraction(0)) + coef
    return {p: c0 for p, c0 in out.items() if not coeff_is_zero(c0)}


def regularization_schedule(n, var, limit, tries=200):
    """Deterministic coefficient vectors {i: c_i} for the substitution
    x_i <- y_i + c_i * y_var: zero, then uniform values, then seeded
    small-integer vectors (generic, Schwartz-Zippel style)."""
    others = [i for i in range(1, n + 1) if i != var]
    yield {i: 0 for i in others}
    c = 1
    while c <= limit:
        yield {i: c for i in others}
        yield {i: -c for i in others}
        c += 1
    rng = random.Random(20240601)
    for _ in range(tries):
        yield {i: rng.randint(-limit, limit) for i in others}


def regularize(system, var, skip=0):
    """Make every equation satisfy f(0, ..., 0, x_var) != 0 via the
    substitution x_i <- y_i + c_i*y_var (i != var), tried over a
    deterministic schedule of small integer vectors.  Returns
    (new system, LinearMap) with x = M y.

    skip > 0 passes over that many valid coefficient vectors: callers use
    it to escape a substitution that happens to collapse distinct solution
    branches onto one multiple root downstream."""
    n = system.level
    for f in system.equations:
        if not any(f.depends_on(i) for i in range(1, n + 1)):
            raise RegularizationError(
                "equation does not depend on any unknown")
    maxdeg = max(f.total_degree() for f in system.equations)
    limit = n * maxdeg + 2
    remaining = skip
    for coeffs in regularization_schedule(n, var, limit):
        if all(_slice_at_axis(f, var, coeffs) for f in system.equations):
            if remaining > 0:
                remaining -= 1
                continue
            if all(c == 0 for c in coeffs.values()):
                return system, LinearMap.identity(n)
            m = LinearMap.identity(n)
            for i, c in coeffs.items():
                m.matrix[i - 1][var - 1] = Fraction(c)
            return PolySystem([m.apply_poly(f) for f in system.equations],
                              n), m
    raise RegularizationError("regularization failed")


class UniJetPoly:
    """Polynomial in one distinguished unknown whose coefficients are
    Puiseux jets: the univariate slice used by the regularity check."""

    def __init__(self, var, coeffs):
        self.var = var
        self.coeffs = list(coeffs)
        while self.coeffs and self.coeffs[-1].is_zero():
            self.coeffs.pop()

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def to_bivariate(self):
        """Rescale lambda = mu^tau so all exponents are integers.

        Returns (poly, tau) with poly a MultiPoly in (mu, y), y standing for
        the distinguished unknown.
        """
        tau = common_ram(self.coeffs)
        terms = {}
        for k, jet in enumerate(self.coeffs):
            for m, c in jet.on_ram(tau):
                terms[(m, k)] = c
        return MultiPoly(1, terms), tau

    def trunc(self):
        return min_trunc(self.coeffs)


def _tmul(a, b, cap):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if cap is not None and e > cap:
                continue
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return {e: c for e, c in out.items() if not coeff_is_zero(c)}


def jet_compose(f, assignment, free_var=None, order=None):
    """Substitute jets for the unknowns of f.

    assignment maps unknown indices (1-based) to PuiseuxJets and must cover
    every unknown except free_var.  Without free_var the result is the jet
    of f(lambda, jets...); with free_var it is a UniJetPoly in that unknown.
    order, when given, bounds the computation; the result's truncation is
    the weakest of the inputs' guarantees and order.
    """
    n = f.nvars
    needed = [i for i in range(1, n + 1) if i != free_var]
    if any(i not in assignment for i in needed):
        raise JetsolveError("assignment must cover all unknowns but free_var")
    jets = {i: assignment[i] for i in needed}
    tau = common_ram(jets.values()) if jets else 1
    t = min_trunc(jets.values())
    if order is not None:
        order = Fraction(order)
        t = order if t is None else min(t, order)
    if t is not None and t <= 0:
        raise TruncationError("inputs too short to produce the leading term",
                              required_order=1)
    cap = None if t is None else int(t * tau)

    mu_jets = {i: dict(jets[i].on_ram(tau)) for i in jets}
    pow_cache = {}

    def jet_pow(i, k):
        key = (i, k)
        if key not in pow_cache:
            if k == 0:
                pow_cache[key] = {0: Fraction(1)}
            else:
                pow_cache[key] = _tmul(jet_pow(i, k - 1), mu_jets[i], cap)
        return pow_cache[key]

    slots = {}
    for exps, c in f.terms.items():
        mu0 = exps[0] * tau
        if cap is not None and mu0 > cap:
            continue
        acc = {mu0: c}
        for i in needed:
            k = exps[i]
            if k:
                acc = _tmul(acc, jet_pow(i, k), cap)
            if not acc:
                break
        if not acc:
            continue
        key = exps[free_var] if free_var is not None else 0
        slot = slots.setdefault(key, {})
        for e, v in acc.items():
            slot[e] = slot.get(e, Fraction(0)) + v

    def to_jet(mu_terms):
        return PuiseuxJet(tau, list(mu_terms.items()), t)

    if free_var is None:
        return to_jet(slots.get(0, {}))
    top = max(slots) if slots else 0
    return UniJetPoly(free_var,
                      [to_jet(slots.get(k, {})) for k in range(top + 1)])


def residual_valuation(f, assignment, order=None):
    """lambda-valuation of f composed with the given jets; None means the
    residual vanished identically to the computed order."""
    r = jet_compose(f, assignment, order=order)
    return r.valuation()
