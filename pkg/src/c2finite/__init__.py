"""Exact C-finite and C^2-finite sequences, and graph polynomials on
bi-iteratively constructed graph families."""

from .errors import (BoundExceeded, C2Error, CertificationError, DomainMismatch, ExtractionError,
                     PatternNotFound)
from .rings import QQ, MPoly, PolyRing, RatFunc, RatFuncField, parse_expr
from .linalg import RingMatrix, char_poly, mat_adjugate, mat_det
from .cfinite import (CFiniteSeq, ZeroPattern, cf_add, cf_const, cf_equal, cf_fibonacci,
                      cf_indicator, cf_minimize, cf_mul, cf_shift, cf_subseq, cf_zero_pattern)
from .cfmatrix import CFMatrixSeq, cfm_det, cfm_mul, const_power_seq
from .c2 import (C2Recurrence, ExtractionParams, VerifyReport, c2_combine, c2_guess, c2_verify,
                 extract_recurrence, fib, fib_identity_recurrences, quadratic_subseq)
from .graphs import (FamilySpec, KGraph, analyze_spec, apply_elementary, disjoint_union,
                     export_graph, iterative_to_bi, materialize, quadratic_reindex)
from .catalog import builtin_catalog, get_family
from .graphpoly import chromatic_eval, dichromatic, independence_poly, path_Z_split, tutte
from .famrec import (family_recurrence_verify, g2_independence, g4_dichromatic,
                     g4_evaluations)

__version__ = "0.1.0"

__all__ = [
    "BoundExceeded", "C2Error", "CertificationError", "DomainMismatch", "ExtractionError",
    "PatternNotFound", "QQ", "MPoly", "PolyRing", "RatFunc", "RatFuncField", "parse_expr",
    "RingMatrix", "char_poly", "mat_adjugate", "mat_det", "CFiniteSeq", "ZeroPattern", "cf_add",
    "cf_const", "cf_equal", "cf_fibonacci", "cf_indicator", "cf_minimize", "cf_mul", "cf_shift",
    "cf_subseq", "cf_zero_pattern", "CFMatrixSeq", "cfm_det", "cfm_mul", "const_power_seq",
    "C2Recurrence", "ExtractionParams", "VerifyReport", "c2_combine", "c2_guess", "c2_verify",
    "extract_recurrence", "fib", "fib_identity_recurrences", "quadratic_subseq", "FamilySpec",
    "KGraph", "analyze_spec", "apply_elementary", "disjoint_union", "export_graph",
    "iterative_to_bi", "materialize", "quadratic_reindex", "builtin_catalog", "get_family",
    "chromatic_eval", "dichromatic", "independence_poly", "path_Z_split", "tutte",
    "family_recurrence_verify", "g2_independence", "g4_dichromatic", "g4_evaluations",
]
