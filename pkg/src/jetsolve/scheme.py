"""The elimination-and-lift pipeline.

A square system f(lambda, x) = 0 is reduced level by level: regularize the
top unknown, take one resultant per edge of a chosen labeled tree, repeat
until a single scalar equation remains.  Its branches are then lifted back
up one unknown at a time; a lift is accepted only when the slice equations
pin a unique common simple jet, so every emitted branch carries a full
certificate chain.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import mpmath

from .coeffs import coeff_is_real, to_mpc, zero_tol
from .errors import (DegenerateEdgeError, JetsolveError, NotRegularError,
                     RegularizationError, TruncationError, VerificationError)
from .elimination import (classical_resultant_system, gcd_report,
                          tree_resultant_system)
from .jets import PuiseuxJet, jet_sort_key, min_trunc
from .multipoly import UniView
from .prep import PolySystem, jet_compose, regularize
from .puiseux import (SimplicityCertificate, extend_jet, puiseux_branches,
                      simplicity_certificate)
from .trees import Tree, enumerate_trees

MAX_BASE_RETRIES = 4


# -- chains ----------------------------------------------------------------

@dataclass
class LevelRecord:
    level: int
    pre: PolySystem          # system arriving at this level
    reg: PolySystem          # regularized in the top unknown
    linmap: object           # x = M y between pre and reg coordinates
    tree: Tree               # tree used to eliminate the top unknown


class BuiltChain:
    """A full descending chain of systems, one LevelRecord per level from n
    down to 2, plus the final scalar equation."""

    def __init__(self, n, records, base, descriptor):
        self.n = n
        self.records = records          # dict level -> LevelRecord
        self.base = base                # PolySystem, level 1
        self.descriptor = descriptor    # tuple of Prüfer codes, top first

    def level(self, k):
        return self.records[k]


def build_chain(system, trees, reg_skip=0):
    """Run the elimination chain with one tree per level (top level first).

    Raises DegenerateEdgeError (with level and edge) when a resultant
    vanishes identically, which suggests trying another tree.  reg_skip
    shifts every level's regularization to its next valid substitution.
    """
    n = system.level
    trees = list(trees)
    if len(trees) != max(n - 1, 0):
        raise JetsolveError(f"need {n - 1} trees for a {n}-unknown system")
    cur = system.normalized()
    records = {}
    for k in range(n, 1, -1):
        tree = trees[n - k]
        if tree.n != k:
            raise JetsolveError(f"tree at level {k} has {tree.n} vertices")
        reg, lm = regularize(cur, k, skip=reg_skip)
        records[k] = LevelRecord(k, cur, reg, lm, tree)
        cur = tree_resultant_system(reg, tree, k)
    descriptor = tuple(t.prufer for t in trees)
    return BuiltChain(n, records, cur, descriptor)


def _chain_candidates(n, strategy, explicit=None):
    if explicit is not None:
        yield [Tree.from_prufer(k, code)
               for k, code in zip(range(n, 1, -1), explicit)]
        return
    pools = [enumerate_trees(k) for k in range(n, 1, -1)]
    for combo in product(*pools):
        yield list(combo)


# -- lift machinery --------------------------------------------------------

@dataclass
class JetSet:
    index: int               # slice equation index (1-based)
    jets: list               # simple-root jets in lambda
    t: Fraction              # matching order actually used


@dataclass
class RegularityReport:
    status: str              # regular | ambiguous | empty | degenerate-edge
    level: int
    matched_jet: object = None
    witness: object = None
    jet_sets: list = field(default_factory=list)
    used_shortcut: bool = False


@dataclass
class SolutionBranch:
    components: list         # jets of x_1..x_n in the input coordinates
    reports: list            # one RegularityReport per lift level
    residual_valuations: list
    real_class: str
    certs: list              # per-component simplicity certificates
    provenance: list         # chain descriptors that produced the branch


class _Slice:
    """One equation of a level-k system restricted to a partial branch:
    a bivariate polynomial in (mu, y) with lambda = mu^tau."""

    def __init__(self, index, biv, tau, t_eff):
        self.index = index
        self.biv = biv
        self.tau = tau
        self.t_eff = t_eff       # accuracy order in lambda units
        self.entries = []        # (lam_jet, mu_jet, cert)

    def lam_jet(self, mu_jet):
        return PuiseuxJet(mu_jet.ram * self.tau, mu_jet.terms, self.t_eff)


def _build_slices(reg_system, partial, T):
    k = reg_system.level
    assignment = {i: jet for i, jet in enumerate(partial, 1)}
    slices = []
    for idx, eq in enumerate(reg_system.equations, 1):
        ujp = jet_compose(eq, assignment, free_var=k, order=T)
        if ujp.degree < 1:
            raise TruncationError(
                f"slice {idx} at level {k} degenerates in the lifted "
                "unknown; extend the partial branch",
                required_order=2 * Fraction(T))
        biv, tau = ujp.to_bivariate()
        t = ujp.trunc()
        t_eff = Fraction(T) if t is None else min(Fraction(T), t)
        sl = _Slice(idx, biv, tau, t_eff)
        mu_target = int(t_eff * tau)
        for mu_jet, mult in puiseux_branches(biv, mu_target):
            if mult != 1:
                continue
            cert = simplicity_certificate(biv, mu_jet)
            if cert == "not simple":
                continue
            sl.entries.append((sl.lam_jet(mu_jet), mu_jet, cert))
        slices.append(sl)
    return slices


def _jet_sets(slices, t_ord):
    return [JetSet(sl.index, [e[0] for e in sl.entries], t_ord)
            for sl in slices]


def _extend_and_verify(slices, pick_slice, entry, T):
    """Extend a matched jet on its home slice and check the residual on
    every slice equation.  Returns the extended lambda-jet or None."""
    lam_jet, mu_jet, cert = entry
    sl = pick_slice
    mu_ord = sl.t_eff * sl.tau
    ext_mu = extend_jet(sl.biv, mu_jet, cert, mu_ord)
    # lambda-exponent of a term is n / (ext_mu.ram * sl.tau)
    for other in slices:
        t_com = min(sl.t_eff, other.t_eff)
        probe = PuiseuxJet(ext_mu.ram * sl.tau,
                           [(n * other.tau, c) for n, c in ext_mu.terms],
                           t_com * other.tau)
        res = jet_compose(other.biv, {1: probe})
        if not res.is_zero():
            return None
    return PuiseuxJet(ext_mu.ram * sl.tau, ext_mu.terms,
                      min(s.t_eff for s in slices))


def check_mu_shortcut(slices, tree, t_ord, level):
    """Sufficient condition: every slice indexed by a multiple vertex of
    the tree has exactly one simple jet, and those jets agree."""
    mu = tree.multiple_vertices()
    if not mu:
        return None
    picked = None
    for sl in slices:
        if sl.index not in mu:
            continue
        if len(sl.entries) != 1:
            return None
        if picked is None:
            picked = sl
        elif not picked.entries[0][0].agrees(sl.entries[0][0], t_ord):
            return None
    if picked is None:
        return None
    return RegularityReport("regular", level,
                            matched_jet=picked.entries[0][0],
                            jet_sets=_jet_sets(slices, t_ord),
                            used_shortcut=True), picked, picked.entries[0]


def lift_branch(reg_system, tree, partial, T, t_match=None):
    """Lift a (k-1)-component partial branch through the level-k system.

    Slices are computed to order T; matching happens at t_match (default T),
    so jets that tie at the certification order but separate above it are
    caught as ambiguous rather than silently merged.

    Returns (candidates, report): candidates is a list of
    (extended jet, certificate) pairs, at most one under regularity.
    """
    level = reg_system.level
    slices = _build_slices(reg_system, partial, T)
    t_ord = min(sl.t_eff for sl in slices)
    if t_match is not None:
        t_ord = min(t_ord, Fraction(t_match))

    # internal collisions: two jets of one slice equal to the matching order
    for sl in slices:
        jets = [e[0] for e in sl.entries]
        for i in range(len(jets)):
            for j in range(i + 1, len(jets)):
                if jets[i].agrees(jets[j], t_ord):
                    report = RegularityReport(
                        "ambiguous", level,
                        witness=[jets[i], jets[j]],
                        jet_sets=_jet_sets(slices, t_ord))
                    return [], report

    shortcut = check_mu_shortcut(slices, tree, t_ord, level)
    if shortcut is not None:
        report, sl, entry = shortcut
        ext = _extend_and_verify(slices, sl, entry, T)
        if ext is not None:
            report.matched_jet = ext
            return [(ext, entry[2])], report
        # residuals disagreed with the shortcut; fall through to matching

    first = slices[0]
    common = []
    for entry in first.entries:
        jet = entry[0]
        if all(any(jet.agrees(e[0], t_ord) for e in sl.entries)
               for sl in slices[1:]):
            common.append(entry)
    if not common:
        report = RegularityReport("empty", level,
                                  jet_sets=_jet_sets(slices, t_ord))
        return [], report
    if len(common) > 1:
        report = RegularityReport("ambiguous", level,
                                  witness=[e[0] for e in common],
                                  jet_sets=_jet_sets(slices, t_ord))
        return [], report
    entry = common[0]
    ext = _extend_and_verify(slices, first, entry, T)
    if ext is None:
        report = RegularityReport("empty", level,
                                  jet_sets=_jet_sets(slices, t_ord))
        return [], report
    report = RegularityReport("regular", level, matched_jet=ext,
                              jet_sets=_jet_sets(slices, t_ord))
    return [(ext, entry[2])], report


# -- base level ------------------------------------------------------------

def _base_branches(base_eq, T):
    """Simple branches of the final scalar equation with certificates.

    Retries at doubled order when a certificate needs more terms.
    """
    target = Fraction(T)
    notes = []
    for attempt in range(MAX_BASE_RETRIES):
        try:
            out = []
            notes = []
            for jet, mult in puiseux_branches(base_eq, target):
                if mult != 1:
                    notes.append(
                        "base branch with leading exponent "
                        f"{jet.valuation()} has multiplicity {mult}: "
                        "not simple, not effectively computable")
                    continue
                cert = simplicity_certificate(base_eq, jet)
                if cert == "not simple":
                    notes.append("base branch rejected: not simple")
                    continue
                jet = extend_jet(base_eq, jet, cert, target)
                out.append((jet, cert))
            return out, notes
        except TruncationError as exc:
            need = getattr(exc, "required_order", None)
            target = max(target * 2,
                         Fraction(need) if need else target * 2)
    raise TruncationError("base branches did not stabilize",
                          required_order=target)


# -- solver ----------------------------------------------------------------

class SolveResult:

    def __init__(self, status, branches, notes=None, reports=None,
                 chains_used=None):
        self.status = status          # branches | no-small-solutions |
                                      # ambiguous | empty
        self.branches = branches
        self.notes = notes or []
        self.reports = reports or []  # ambiguity/empty reports
        self.chains_used = chains_used or []
        self.had_loss = False


@dataclass
class _Partial:
    comps: list              # jets solving the current reduced system
    reports: list
    certs: list


def _solve_chain(chain, T, t_cert=None):
    """Branches of one built chain (components in the coordinates of the
    normalized input system).  T is the working order; t_cert (default T)
    is the certification/matching order."""
    t_cert = Fraction(T) if t_cert is None else Fraction(t_cert)
    base_eq = chain.base.equations[0]
    notes = []
    if base_eq.degree(1) <= 0:
        # lambda-only nonzero equation: nothing vanishes near the origin
        return SolveResult("no-small-solutions", [],
                           ["final scalar equation does not involve the "
                            "unknown"])
    pairs, base_notes = _base_branches(base_eq, T)
    notes.extend(base_notes)
    partials = [_Partial([jet], [], [cert]) for jet, cert in pairs]
    bad_reports = []
    for k in range(2, chain.n + 1):
        rec = chain.level(k)
        nxt = []
        for p in partials:
            candidates, report = lift_branch(rec.reg, rec.tree, p.comps, T,
                                             t_cert)
            if not candidates:
                bad_reports.append(report)
                continue
            jet, cert = candidates[0]
            comps = rec.linmap.apply_jets(p.comps + [jet])
            nxt.append(_Partial(comps, p.reports + [report],
                                p.certs + [cert]))
        partials = nxt
    branches = []
    for p in partials:
        branches.append((p.comps, p.reports, p.certs))
    ambiguous = any(r.status == "ambiguous" for r in bad_reports)
    if branches:
        status = "branches"
    elif ambiguous:
        status = "ambiguous"
    else:
        status = "empty"
    result = SolveResult(status, branches, notes, bad_reports,
                         [chain.descriptor])
    # a discarded multiple root or a failed lift may be an artifact of the
    # regularization collapsing distinct solutions; flag it so the caller
    # can retry with the next substitution
    result.had_loss = bool(bad_reports) or \
        any("multiplicity" in note for note in notes)
    return result


def _run_chain_orders(built, T):
    """Solve one chain, working above the certification order T so that
    near-ties at T surface as ambiguity instead of multiplicity; escalates
    the working order when certificates need more terms."""
    t_try = 2 * Fraction(T)
    for attempt in range(3):
        try:
            return _solve_chain(built, t_try, T)
        except TruncationError as exc:
            need = getattr(exc, "required_order", None)
            t_try = max(2 * t_try, Fraction(need) if need else 2 * t_try)
    raise TruncationError("chain did not stabilize", required_order=t_try)


def solve_effective(system, T=6, strategy="first-chain", chain=None):
    """All effectively computable small-solution branches of a square
    system, certified level by level.

    strategy: "first-chain" (first tree chain that eliminates without a
    degenerate edge), "all-chains" (union over every chain, deduplicated),
    or "explicit" with `chain` a list of Prüfer codes, top level first.
    """
    system = system.normalized()
    n = system.level
    if len(system.equations) != n:
        raise JetsolveError(
            "the number of equations must coincide with the number of "
            "unknowns")
    T = Fraction(T)

    if n == 1:
        return _solve_scalar(system, T)

    explicit = chain if strategy == "explicit" else None
    last_exc = None
    merged = {}
    notes = []
    reports = []
    chains_used = []
    statuses = []
    for trees in _chain_candidates(n, strategy, explicit):
        ran_chain = False
        for reg_skip in range(3):
            try:
                built = build_chain(system, trees, reg_skip)
            except (DegenerateEdgeError, NotRegularError,
                    RegularizationError) as exc:
                last_exc = exc
                if strategy == "explicit" and reg_skip == 0:
                    raise
                break
            result = _run_chain_orders(built, T)
            ran_chain = True
            notes.extend(result.notes)
            reports.extend(result.reports)
            if built.descriptor not in chains_used:
                chains_used.append(built.descriptor)
            statuses.append(result.status)
            for comps, reps, certs in result.branches:
                comps = [c.truncate(T) for c in comps]
                key = _branch_key(comps)
                if key in merged:
                    if built.descriptor not in merged[key].provenance:
                        merged[key].provenance.append(built.descriptor)
                else:
                    residuals = verify_residuals(system, comps, order=T)
                    branch = SolutionBranch(
                        comps, reps, residuals, "undetermined", certs,
                        [built.descriptor])
                    branch.real_class = classify_realness(branch)
                    merged[key] = branch
            if not result.had_loss:
                break
        if ran_chain and strategy != "all-chains":
            break
    if not chains_used:
        if last_exc is not None:
            raise last_exc
        raise JetsolveError("no elimination chain available")
    branches = sorted(
        merged.values(),
        key=lambda b: [jet_sort_key(c) for c in b.components])
    if branches:
        status = "branches"
    elif "ambiguous" in statuses:
        status = "ambiguous"
    elif "no-small-solutions" in statuses and \
            all(s == "no-small-solutions" for s in statuses):
        status = "no-small-solutions"
    else:
        status = "empty"
    return SolveResult(status, branches, notes, reports, chains_used)


def _solve_scalar(system, T):
    eq = system.equations[0]
    if eq.degree(1) <= 0:
        return SolveResult("no-small-solutions", [],
                           ["equation does not involve the unknown"])
    pairs, notes = _base_branches(eq, T)
    branches = []
    for jet, cert in pairs:
        residuals = verify_residuals(system, [jet], order=T)
        branch = SolutionBranch([jet], [], residuals, "undetermined",
                                [cert], [()])
        branch.real_class = classify_realness(branch)
        branches.append(branch)
    branches.sort(key=lambda b: [jet_sort_key(c) for c in b.components])
    status = "branches" if branches else "empty"
    return SolveResult(status, branches, notes)


def _branch_key(comps):
    key = []
    for c in comps:
        key.append(tuple(jet_sort_key(c)[0]))
    return tuple(key)


# -- family detection ------------------------------------------------------

class FamilyScan:

    def __init__(self, verdict, level=None, reports=None):
        self.verdict = verdict        # finite | no-small-solutions | family
        self.level = level            # set for family verdicts
        self.reports = reports or {}  # level -> GcdReport

    def describe(self):
        if self.verdict == "family":
            return f"positive-dimensional family at level {self.level}"
        if self.verdict == "no-small-solutions":
            return "no small solutions"
        return "finite"


def detect_families(system):
    """GCD-degree scan along the classical (all-pairs) elimination chain:
    a positive degree above the base level flags a solution family."""
    cur = system.normalized()
    reports = {}
    for k in range(system.level, 0, -1):
        eqs = cur.equations
        if k == 1:
            if any(not f.depends_on(1) for f in eqs):
                # a nonzero lambda-only equation cannot vanish near zero
                return FamilyScan("no-small-solutions", reports=reports)
            reg, _ = regularize(cur, 1)
            if len(reg.equations) == 1:
                d1 = reg.equations[0].degree(1)
            else:
                rep = gcd_report([UniView(f, 1) for f in reg.equations])
                reports[1] = rep
                d1 = rep.degree
            if d1 > 0:
                return FamilyScan("finite", reports=reports)
            return FamilyScan("no-small-solutions", reports=reports)
        reg, _ = regularize(cur, k)
        if len(reg.equations) >= 2:
            rep = gcd_report([UniView(f, k) for f in reg.equations])
            reports[k] = rep
            if rep.degree > 0:
                return FamilyScan("family", level=k, reports=reports)
        try:
            cur = classical_resultant_system(reg, k)
        except DegenerateEdgeError:
            # a pair of equations shares a factor in the top unknown
            return FamilyScan("family", level=k, reports=reports)
    return FamilyScan("finite", reports=reports)


# -- realness and verification ---------------------------------------------

def classify_realness(branch, certs=None):
    """Half-axis realness from the first r_k terms of each component: a
    term is real for lambda > 0 iff its coefficient is real, and for
    lambda < 0 iff additionally the reduced exponent denominator is odd."""
    certs = certs if certs is not None else branch.certs
    if len(certs) != len(branch.components):
        return "undetermined"
    pos = neg = True
    for comp, cert in zip(branch.components, certs):
        r = cert.r if isinstance(cert, SimplicityCertificate) else None
        if r is None:
            return "undetermined"
        terms = comp.terms[:max(r, 1)]
        for num, c in terms:
            if not coeff_is_real(c):
                pos = neg = False
                break
            if Fraction(num, comp.ram).denominator % 2 == 0:
                neg = False
        if not (pos or neg):
            break
    if pos and neg:
        return "real both"
    if pos:
        return "real lambda>0"
    if neg:
        return "real lambda<0"
    return "complex"


def verify_residuals(system, components, order=None):
    """Compose every equation with the branch; each residual must vanish to
    the available order.  Returns per-equation valuations (None = vanished
    identically to the computed order)."""
    assignment = {i: c for i, c in enumerate(components, 1)}
    vals = []
    for idx, eq in enumerate(system.equations, 1):
        res = jet_compose(eq, assignment, order=order)
        if res.is_zero():
            vals.append(None)
        else:
            raise VerificationError(
                f"residual of equation {idx} has valuation "
                f"{res.valuation()}; verification failed")
    return vals


def newton_refine(system, seed, lam, steps=60):
    """Polish a numeric point with Newton's method at a concrete lambda.

    Returns (solution vector, final residual norm, distance moved)."""
    n = system.level
    lamv = to_mpc(lam)
    x = mpmath.matrix([to_mpc(v) for v in seed])
    start = mpmath.matrix(x)
    eqs = system.equations
    jac = [[eq.derivative(j + 1) for j in range(n)] for eq in eqs]
    for _ in range(steps):
        vals = [lamv] + [x[i] for i in range(n)]
        fvec = mpmath.matrix([eq.evaluate(vals) for eq in eqs])
        jmat = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                jmat[i, j] = jac[i][j].evaluate(vals)
        try:
            dx = mpmath.lu_solve(jmat, -fvec)
        except ZeroDivisionError:
            break
        x = x + dx
        if mpmath.norm(dx) < zero_tol():
            break
    vals = [lamv] + [x[i] for i in range(n)]
    fnorm = mpmath.norm(mpmath.matrix([eq.evaluate(vals) for eq in eqs]))
    return x, fnorm, mpmath.norm(x - start)
