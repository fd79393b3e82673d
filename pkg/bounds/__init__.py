from .models import (
    BoundId,
    BoundReport,
    BoundSummary,
    EqualityKind,
    EqualityReport,
    OperatorPair,
    RemarkReport,
    Term,
)
from .registry import SUPPORTED_BOUNDS, PairContext, default_tol, eval_all, eval_bound, get_evaluator
from .lemmas import check_mixed_schwarz, check_power_lemma, check_sum_norm_lemma
from .equality import (
    check_corollary,
    check_double_radius_remark,
    check_equality_half,
    check_equality_quarter,
    check_rotated_remarks,
)

__all__ = [
    "BoundId",
    "BoundReport",
    "BoundSummary",
    "EqualityKind",
    "EqualityReport",
    "OperatorPair",
    "RemarkReport",
    "Term",
    "SUPPORTED_BOUNDS",
    "PairContext",
    "default_tol",
    "eval_all",
    "eval_bound",
    "get_evaluator",
    "check_mixed_schwarz",
    "check_power_lemma",
    "check_sum_norm_lemma",
    "check_corollary",
    "check_double_radius_remark",
    "check_equality_half",
    "check_equality_quarter",
    "check_rotated_remarks",
]
