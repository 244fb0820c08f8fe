"""Exact enumeration and classification of quadratic integral points on
curves cut out by two simultaneous Pell equations."""

from .classify import (
    Classification,
    Verdict,
    classify,
    conjugate_point,
    detect_degenerate,
    exceptional_eps_candidates,
    family_image,
    loci_from_invariants,
    loci_from_signs,
    two_term_unit_check,
)
from .curve import (
    CurveParams,
    IdentityReport,
    InfinityPoints,
    QuadPoint,
    SPrimeSet,
    SymPoint,
    canonical_representative,
    compute_bounds,
    eval_fgh,
    is_s_integral,
    on_curve,
    pair_key,
    points_at_infinity,
    sym_invariants,
    validate_curve,
    verify_identities,
)
from .errors import (
    DegenerateCurve,
    DivisionByZero,
    DomainError,
    OffCurve,
    PanicInvariant,
)
from .exactmath import MultiQuad, factorize, squarefree_decompose
from .pell import (
    CFExpansion,
    PellProblem,
    PellSolutionSet,
    cf_sqrt,
    pell_classes,
    pell_compose,
    pell_fundamental,
    pell_iterate,
    solve_conic,
)
from .search import (
    SearchConfig,
    SUnitSolution,
    box_search,
    cross_check_sunit,
    enumerate_family_xy,
    enumerate_family_xz,
    enumerate_family_yz,
    search_exceptional,
    sunit_solutions,
)

__version__ = "0.1.0"

__all__ = [
    "CFExpansion",
    "Classification",
    "CurveParams",
    "DegenerateCurve",
    "DivisionByZero",
    "DomainError",
    "IdentityReport",
    "InfinityPoints",
    "MultiQuad",
    "OffCurve",
    "PanicInvariant",
    "PellProblem",
    "PellSolutionSet",
    "QuadPoint",
    "SPrimeSet",
    "SUnitSolution",
    "SearchConfig",
    "SymPoint",
    "Verdict",
    "box_search",
    "canonical_representative",
    "cf_sqrt",
    "classify",
    "compute_bounds",
    "conjugate_point",
    "cross_check_sunit",
    "detect_degenerate",
    "enumerate_family_xy",
    "enumerate_family_xz",
    "enumerate_family_yz",
    "eval_fgh",
    "exceptional_eps_candidates",
    "factorize",
    "family_image",
    "is_s_integral",
    "loci_from_invariants",
    "loci_from_signs",
    "on_curve",
    "pair_key",
    "pell_classes",
    "pell_compose",
    "pell_fundamental",
    "pell_iterate",
    "points_at_infinity",
    "search_exceptional",
    "solve_conic",
    "squarefree_decompose",
    "sunit_solutions",
    "sym_invariants",
    "two_term_unit_check",
    "validate_curve",
    "verify_identities",
]
