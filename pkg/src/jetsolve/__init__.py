"""Puiseux-series jets of the small solutions of polynomial systems near a
degenerate zero, via tree-indexed resultant elimination with per-level
regularity certificates."""

from .coeffs import DEFAULT_PRECISION
from .errors import (DegenerateEdgeError, InputError, JetsolveError,
                     NotRegularError, PrecisionError, RegularizationError,
                     TruncationError, VerificationError, ZeroEquationError)
from .jets import PuiseuxJet
from .multipoly import MultiPoly, UniView
from .prep import LinearMap, PolySystem, jet_compose, regularize
from .puiseux import (PolygonEdge, SimplicityCertificate, extend_jet,
                      newton_polygon, poly_roots, puiseux_branches,
                      simplicity_certificate)
from .elimination import (GcdReport, classical_resultant_system, gcd_report,
                          resultant, resultant_sylvester,
                          tree_resultant_system)
from .trees import Tree, enumerate_trees, multiple_vertices
from .scheme import (BuiltChain, FamilyScan, JetSet, RegularityReport,
                     SolutionBranch, SolveResult, build_chain,
                     check_mu_shortcut, classify_realness, detect_families,
                     lift_branch, newton_refine, solve_effective,
                     verify_residuals)
from .sysfile import SystemFile, parse_system_file, parse_system_text

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION", "DegenerateEdgeError", "InputError",
    "JetsolveError", "NotRegularError", "PrecisionError",
    "RegularizationError", "TruncationError", "VerificationError",
    "ZeroEquationError", "PuiseuxJet", "MultiPoly", "UniView", "LinearMap",
    "PolySystem", "jet_compose", "regularize", "PolygonEdge",
    "SimplicityCertificate", "extend_jet", "newton_polygon", "poly_roots",
    "puiseux_branches", "simplicity_certificate", "GcdReport",
    "classical_resultant_system", "gcd_report", "resultant",
    "resultant_sylvester", "tree_resultant_system", "Tree",
    "enumerate_trees", "multiple_vertices", "BuiltChain", "FamilyScan",
    "JetSet", "RegularityReport", "SolutionBranch", "SolveResult",
    "build_chain", "check_mu_shortcut", "classify_realness",
    "detect_families", "lift_branch", "newton_refine", "solve_effective",
    "verify_residuals", "SystemFile", "parse_system_file",
    "parse_system_text",
]
