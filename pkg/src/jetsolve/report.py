"""Report assembly: runs the pipeline on a parsed system file and renders
the outcome as a versioned machine-readable document or a text report.

Exit codes (stable scripting contract):
    0  branches emitted
    1  no small solutions
    2  solution family detected
    3  ambiguity / nothing certifiable
    4  input error
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .coeffs import DEFAULT_PRECISION, format_coeff, parse_coeff
from .errors import (DegenerateEdgeError, InputError, JetsolveError,
                     NotRegularError, PrecisionError, RegularizationError,
                     TruncationError, VerificationError, ZeroEquationError)
from .jets import PuiseuxJet
from .scheme import detect_families, newton_refine, solve_effective

SCHEMA_VERSION = 1

EXIT_BRANCHES = 0
EXIT_NO_SMALL = 1
EXIT_FAMILY = 2
EXIT_AMBIGUOUS = 3
EXIT_INPUT = 4


@dataclass
class Options:
    order: Fraction = Fraction(6)
    trees: str = "first"
    precision: int = DEFAULT_PRECISION
    verify_numeric: list = field(default_factory=list)
    families: bool = False
    real_only: bool = False


def parse_tree_option(value):
    """--trees value: 'first', 'all', or explicit Prüfer codes per level,
    top level first, levels separated by ';' (e.g. '1,1;2' for n=4)."""
    value = (value or "first").strip()
    if value in ("first", "all"):
        return value, None
    codes = []
    for part in value.split(";"):
        part = part.strip()
        entries = [p for p in part.split(",") if p.strip()]
        codes.append(tuple(int(p) for p in entries))
    return "explicit", codes


# -- jet serialization -----------------------------------------------------

def jet_to_obj(jet):
    terms = [{"num": n,
              "exponent": str(Fraction(n, jet.ram)),
              "coefficient": format_coeff(c)}
             for n, c in jet.terms]
    return {"ram": jet.ram,
            "trunc": None if jet.trunc is None else str(jet.trunc),
            "terms": terms}


def obj_to_jet(obj):
    trunc = None if obj.get("trunc") is None else Fraction(obj["trunc"])
    terms = [(t["num"], parse_coeff(t["coefficient"]))
             for t in obj["terms"]]
    return PuiseuxJet(obj["ram"], terms, trunc)


def _report_obj(rep):
    out = {"level": rep.level, "status": rep.status,
           "used_shortcut": rep.used_shortcut}
    if rep.matched_jet is not None:
        out["matched_jet"] = jet_to_obj(rep.matched_jet)
    if rep.witness:
        out["witness"] = [jet_to_obj(j) for j in rep.witness]
    out["jet_sets"] = [{"equation": js.index, "t": str(js.t),
                        "jets": [jet_to_obj(j) for j in js.jets]}
                       for js in rep.jet_sets]
    return out


def _branch_obj(branch):
    return {
        "components": [jet_to_obj(c) for c in branch.components],
        "real_class": branch.real_class,
        "residual_valuations": [None if v is None else str(v)
                                for v in branch.residual_valuations],
        "regularity": [_report_obj(r) for r in branch.reports],
        "provenance": [[list(code) for code in desc]
                       for desc in branch.provenance],
    }


def _families_obj(scan):
    return {
        "verdict": scan.describe(),
        "level": scan.level,
        "gcd_degrees": {str(k): rep.degree
                        for k, rep in sorted(scan.reports.items())},
    }


# -- pipeline --------------------------------------------------------------

def run_pipeline(sysfile, opts):
    """Execute the solver on a parsed SystemFile; returns
    (exit code, machine-readable report dict)."""
    with mpmath.workprec(opts.precision):
        return _run(sysfile, opts)


def _run(sysfile, opts):
    T = Fraction(opts.order)
    report = {
        "schema_version": SCHEMA_VERSION,
        "order": str(T),
        "precision": opts.precision,
        "variables": sysfile.variables,
        "status": None,
        "branches": [],
        "notes": [],
    }

    try:
        system = sysfile.system()
    except ZeroEquationError as exc:
        return _input_error(report, str(exc))
    if len(system.equations) != system.level:
        return _input_error(
            report,
            "the number of equations must coincide with the number of "
            "unknowns")

    if opts.families:
        scan = detect_families(system)
        report["families"] = _families_obj(scan)
        if scan.verdict == "family":
            report["status"] = "family"
            return EXIT_FAMILY, report
        if scan.verdict == "no-small-solutions":
            report["status"] = "no-small-solutions"
            return EXIT_NO_SMALL, report

    strategy, codes = parse_tree_option(opts.trees)
    strat = {"first": "first-chain", "all": "all-chains",
             "explicit": "explicit"}[strategy]
    try:
        result = solve_effective(system, T, strategy=strat, chain=codes)
    except DegenerateEdgeError as exc:
        scan = detect_families(system)
        report["families"] = _families_obj(scan)
        report["notes"].append(str(exc))
        if scan.verdict == "family":
            report["status"] = "family"
            return EXIT_FAMILY, report
        if scan.verdict == "no-small-solutions":
            report["status"] = "no-small-solutions"
            return EXIT_NO_SMALL, report
        report["status"] = "uncertified"
        return EXIT_AMBIGUOUS, report
    except (InputError, ZeroEquationError, RegularizationError,
            NotRegularError) as exc:
        return _input_error(report, str(exc))
    except (TruncationError, PrecisionError, VerificationError) as exc:
        report["status"] = "uncertified"
        report["notes"].append(str(exc))
        return EXIT_AMBIGUOUS, report

    report["notes"].extend(result.notes)
    report["chains_used"] = [[list(code) for code in desc]
                             for desc in result.chains_used]

    if result.status == "no-small-solutions":
        report["status"] = "no-small-solutions"
        return EXIT_NO_SMALL, report
    if result.status == "ambiguous":
        report["status"] = "ambiguous"
        report["ambiguity"] = [_report_obj(r) for r in result.reports
                               if r.status == "ambiguous"]
        return EXIT_AMBIGUOUS, report
    if result.status == "empty":
        scan = detect_families(system)
        report["families"] = _families_obj(scan)
        if scan.verdict == "family":
            report["status"] = "family"
            return EXIT_FAMILY, report
        if scan.verdict == "no-small-solutions":
            report["status"] = "no-small-solutions"
            return EXIT_NO_SMALL, report
        report["status"] = "uncertified"
        report["notes"].append("no branch obtained a full certificate chain")
        return EXIT_AMBIGUOUS, report

    branches = result.branches
    if opts.real_only:
        branches = [b for b in branches if b.real_class.startswith("real")]
    report["status"] = "branches"
    report["branches"] = [_branch_obj(b) for b in branches]
    if opts.verify_numeric:
        report["numeric_checks"] = _numeric_checks(system, branches,
                                                   opts.verify_numeric)
    return EXIT_BRANCHES, report


def _input_error(report, message):
    report["status"] = "input-error"
    report["notes"].append(message)
    return EXIT_INPUT, report


def _numeric_checks(system, branches, lam_values):
    checks = []
    for bi, branch in enumerate(branches):
        for lam_str in lam_values:
            lam = mpmath.mpf(Fraction(str(lam_str)).numerator) / \
                Fraction(str(lam_str)).denominator
            seed = [c.eval(lam) for c in branch.components]
            point, fnorm, moved = newton_refine(system, seed, lam)
            checks.append({
                "branch": bi,
                "lambda": str(lam_str),
                "seed": [format_coeff(v) for v in seed],
                "refined": [format_coeff(point[i])
                            for i in range(len(seed))],
                "residual_norm": mpmath.nstr(fnorm, 10),
                "newton_correction": mpmath.nstr(moved, 10),
            })
    return checks


# -- rendering -------------------------------------------------------------

def machine_output(code, report):
    doc = dict(report)
    doc["exit_code"] = code
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _jet_text(obj):
    if not obj["terms"]:
        body = "0"
    else:
        body = " + ".join(
            f"({_coeff_text(t['coefficient'])})*lambda^({t['exponent']})"
            for t in obj["terms"])
    if obj.get("trunc") is not None:
        body += f" + o(lambda^{obj['trunc']})"
    return body


def _coeff_text(c):
    if isinstance(c, str):
        f = Fraction(c)
        return str(f.numerator) if f.denominator == 1 else c
    return f"{c[0]} + {c[1]}i"


def text_output(code, report):
    lines = []
    lines.append(f"status: {report.get('status')} (exit {code})")
    if "order" in report:
        lines.append(f"truncation order: {report['order']}   "
                     f"precision: {report.get('precision')} bits")
    pos = report.get("input_position")
    if pos and pos.get("line") is not None:
        lines.append(f"at line {pos['line']}, column {pos['column']}")
    if report.get("chains_used"):
        lines.append("chains: " + "; ".join(
            ",".join(str(list(c)) for c in desc) or "(scalar)"
            for desc in report["chains_used"]))
    for note in report.get("notes", []):
        lines.append(f"note: {note}")
    fam = report.get("families")
    if fam:
        lines.append(f"family scan: {fam['verdict']}  "
                     f"gcd degrees {fam['gcd_degrees']}")
    for bi, b in enumerate(report.get("branches", [])):
        lines.append(f"branch {bi + 1}: real_class={b['real_class']}")
        for ci, comp in enumerate(b["components"]):
            name = report["variables"][ci + 1] \
                if ci + 1 < len(report["variables"]) else f"x{ci + 1}"
            lines.append(f"  {name} = {_jet_text(comp)}")
        rv = ", ".join("> order" if v is None else v
                       for v in b["residual_valuations"])
        lines.append(f"  residual valuations: {rv}")
        for rep in b["regularity"]:
            tag = " (shortcut)" if rep.get("used_shortcut") else ""
            lines.append(f"  level {rep['level']}: {rep['status']}{tag}")
    for rep in report.get("ambiguity", []):
        lines.append(f"ambiguity at level {rep['level']}: "
                     f"{len(rep.get('witness', []))} colliding jets")
    for chk in report.get("numeric_checks", []):
        lines.append(f"numeric check branch {chk['branch'] + 1} at "
                     f"lambda={chk['lambda']}: residual "
                     f"{chk['residual_norm']}, correction "
                     f"{chk['newton_correction']}")
    return "\n".join(lines) + "\n"
