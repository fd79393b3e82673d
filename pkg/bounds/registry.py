"""
Evaluators for every inequality chain on w(A kron B).

Each evaluator reads the quantities it needs from a shared ``PairContext``,
which computes them lazily and at most once, so ``eval_all`` pays for
w(A kron B), the distances to scalars and the Crawford-gap search a single time.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, List, Optional

import numpy as np

from config import get_setting
from linalg import (
    InvalidToleranceError,
    NumericalRadiusError,
    UnknownBoundError,
    abs_op,
    adjoint,
    cogram,
    error_code,
    gram,
    hermitian_norm,
    im_part,
    kron,
    operator_norm,
    re_part,
    symmetrize,
)
from numrange import numerical_radius
from scalar_distance import crawford_gap_rhs, distance_to_scalars
from .models import (
    CENTER_GAP,
    CENTER_W_SQUARED,
    BoundId,
    BoundReport,
    BoundSummary,
    OperatorPair,
)

logger = logging.getLogger(__name__)


def default_tol(p: OperatorPair) -> float:
    """bound_tol scaled by (1 + ||a||^2 ||b||^2)."""
    return get_setting("bound_tol") * (1.0 + (operator_norm(p.a) * operator_norm(p.b)) ** 2)


class PairContext:
    """Lazily computed quantities of an operator pair and T = A kron B."""

    def __init__(self, p: OperatorPair, radius_tol: Optional[float] = None):
        self.p = p
        self.radius_tol = get_setting("radius_tol") if radius_tol is None else radius_tol

    @cached_property
    def t(self) -> np.ndarray:
        return kron(self.p.a, self.p.b)

    @cached_property
    def t_star(self) -> np.ndarray:
        return adjoint(self.t)

    @cached_property
    def norm_a(self) -> float:
        return operator_norm(self.p.a)

    @cached_property
    def norm_b(self) -> float:
        return operator_norm(self.p.b)

    @cached_property
    def norm_product(self) -> float:
        return self.norm_a * self.norm_b

    @cached_property
    def norm_t(self) -> float:
        return operator_norm(self.t)

    @cached_property
    def w_a(self) -> float:
        return numerical_radius(self.p.a, self.radius_tol).value

    @cached_property
    def w_b(self) -> float:
        return numerical_radius(self.p.b, self.radius_tol).value

    @cached_property
    def w_t(self) -> float:
        return numerical_radius(self.t, self.radius_tol).value

    @cached_property
    def d_a(self) -> float:
        return distance_to_scalars(self.p.a, self.radius_tol).value

    @cached_property
    def d_b(self) -> float:
        return distance_to_scalars(self.p.b, self.radius_tol).value

    @cached_property
    def re_t(self) -> np.ndarray:
        return re_part(self.t)

    @cached_property
    def im_t(self) -> np.ndarray:
        return im_part(self.t)

    @cached_property
    def norm_re_t(self) -> float:
        return hermitian_norm(self.re_t)

    @cached_property
    def norm_im_t(self) -> float:
        return hermitian_norm(self.im_t)

    @cached_property
    def norm_re_plus_im(self) -> float:
        return hermitian_norm(symmetrize(self.re_t + self.im_t))

    @cached_property
    def norm_re_minus_im(self) -> float:
        return hermitian_norm(symmetrize(self.re_t - self.im_t))

    @cached_property
    def norm_sum(self) -> float:
        """||T + T*||"""
        return operator_norm(self.t + self.t_star)

    @cached_property
    def norm_diff(self) -> float:
        """||T - T*||"""
        return operator_norm(self.t - self.t_star)

    @cached_property
    def norm_rot_plus(self) -> float:
        """||T + i T*||"""
        return operator_norm(self.t + 1j * self.t_star)

    @cached_property
    def norm_rot_minus(self) -> float:
        """||T - i T*||"""
        return operator_norm(self.t - 1j * self.t_star)

    @cached_property
    def cartesian_norm(self) -> float:
        """||A*A kron B*B + AA* kron BB*||"""
        a, b = self.p.a, self.p.b
        return hermitian_norm(symmetrize(kron(gram(a), gram(b)) + kron(cogram(a), cogram(b))))

    @cached_property
    def abs_cross_norm(self) -> float:
        """||Re(|A||A*| kron |B||B*|)||"""
        a, b = self.p.a, self.p.b
        cross = kron(abs_op(a) @ abs_op(adjoint(a)), abs_op(b) @ abs_op(adjoint(b)))
        return hermitian_norm(re_part(cross))

    @cached_property
    def square_norm_root(self) -> float:
        """(||A^2|| ||B^2||)^{1/2}"""
        a, b = self.p.a, self.p.b
        return float(np.sqrt(operator_norm(a @ a) * operator_norm(b @ b)))

    @cached_property
    def crawford_gap(self):
        return crawford_gap_rhs(self.t, tol=self.radius_tol)


Evaluator = Callable[[PairContext, float], BoundReport]


def _classic_norm(ctx: PairContext, tol: float) -> BoundReport:
    return BoundReport.from_chain(
        BoundId.CLASSIC_NORM, ctx.w_t,
        lower=[("half_norm_product", 0.5 * ctx.norm_product)],
        upper=[("norm_product", ctx.norm_product)],
        tol=tol,
    )


def _radius_product(ctx: PairContext, tol: float) -> BoundReport:
    left, right = ctx.w_a * ctx.norm_b, ctx.w_b * ctx.norm_a
    return BoundReport.from_chain(
        BoundId.RADIUS_PRODUCT, ctx.w_t,
        lower=[("radius_product", ctx.w_a * ctx.w_b)],
        upper=[("min_radius_norm", left if left <= right else right)],
        tol=tol,
        details={"w_a_norm_b": left, "w_b_norm_a": right},
    )


def _double_radius(ctx: PairContext, tol: float) -> BoundReport:
    return BoundReport.from_chain(
        BoundId.DOUBLE_RADIUS, ctx.w_t,
        lower=[("radius_product", ctx.w_a * ctx.w_b)],
        upper=[("double_radius_product", 2.0 * ctx.w_a * ctx.w_b)],
        tol=tol,
    )


def _dist_refined(ctx: PairContext, tol: float) -> BoundReport:
    left = ctx.w_a * (ctx.w_b + ctx.d_b)
    right = ctx.w_b * (ctx.w_a + ctx.d_a)
    return BoundReport.from_chain(
        BoundId.DIST_REFINED, ctx.w_t,
        lower=[],
        upper=[("dist_refined", left if left <= right else right),
               ("double_radius_product", 2.0 * ctx.w_a * ctx.w_b)],
        tol=tol,
        details={"d_a": ctx.d_a, "d_b": ctx.d_b, "w_a_refined": left, "w_b_refined": right},
    )


def _abs_upper(ctx: PairContext, tol: float) -> BoundReport:
    x, y = ctx.norm_product, ctx.square_norm_root
    return BoundReport.from_chain(
        BoundId.ABS_UPPER, ctx.w_t ** 2,
        lower=[],
        upper=[("abs_term", 0.25 * ctx.cartesian_norm + 0.5 * ctx.abs_cross_norm),
               ("split", 0.25 * (x * x + y * y) + 0.5 * y * y),
               ("root_term", 0.25 * (x + y) ** 2),
               ("norm_product_sq", x * x)],
        tol=tol,
        center_kind=CENTER_W_SQUARED,
    )


def _cartesian_upper(ctx: PairContext, tol: float) -> BoundReport:
    return BoundReport.from_chain(
        BoundId.CARTESIAN_UPPER, ctx.w_t ** 2,
        lower=[],
        upper=[("cartesian", 0.5 * ctx.cartesian_norm)],
        tol=tol,
        center_kind=CENTER_W_SQUARED,
    )


def _normdiff_lower(ctx: PairContext, tol: float) -> BoundReport:
    bound = 0.5 * ctx.norm_product + 0.25 * abs(ctx.norm_sum - ctx.norm_diff)
    return BoundReport.from_chain(
        BoundId.NORMDIFF_LOWER, ctx.w_t,
        lower=[("normdiff", bound), ("max_re_im", max(ctx.norm_re_t, ctx.norm_im_t))],
        upper=[],
        tol=tol,
        details={"norm_sum": ctx.norm_sum, "norm_diff": ctx.norm_diff},
    )


def _rot_normdiff_lower(ctx: PairContext, tol: float) -> BoundReport:
    bound = 0.5 * ctx.norm_product + 0.25 * abs(ctx.norm_rot_plus - ctx.norm_rot_minus)
    rotated = max(ctx.norm_re_plus_im, ctx.norm_re_minus_im) / np.sqrt(2.0)
    return BoundReport.from_chain(
        BoundId.ROT_NORMDIFF_LOWER, ctx.w_t,
        lower=[("rot_normdiff", bound), ("max_rotated", rotated)],
        upper=[],
        tol=tol,
        details={"norm_rot_plus": ctx.norm_rot_plus, "norm_rot_minus": ctx.norm_rot_minus},
    )


def _sq_normdiff_lower(ctx: PairContext, tol: float) -> BoundReport:
    bound = 0.25 * ctx.cartesian_norm + 0.125 * abs(ctx.norm_sum ** 2 - ctx.norm_diff ** 2)
    return BoundReport.from_chain(
        BoundId.SQ_NORMDIFF_LOWER, ctx.w_t ** 2,
        lower=[("sq_normdiff", bound), ("max_re_im_sq", max(ctx.norm_re_t, ctx.norm_im_t) ** 2)],
        upper=[],
        tol=tol,
        center_kind=CENTER_W_SQUARED,
    )


def _sq_rot_lower(ctx: PairContext, tol: float) -> BoundReport:
    bound = 0.25 * ctx.cartesian_norm + 0.125 * abs(ctx.norm_rot_plus ** 2 - ctx.norm_rot_minus ** 2)
    rotated = 0.5 * max(ctx.norm_re_plus_im, ctx.norm_re_minus_im) ** 2
    return BoundReport.from_chain(
        BoundId.SQ_ROT_LOWER, ctx.w_t ** 2,
        lower=[("sq_rot", bound), ("max_rotated_sq", rotated)],
        upper=[],
        tol=tol,
        center_kind=CENTER_W_SQUARED,
    )


def _crawford_gap(ctx: PairContext, tol: float) -> BoundReport:
    gap = ctx.crawford_gap
    lam = gap.lambda_star
    return BoundReport.from_chain(
        BoundId.CRAWFORD_GAP, ctx.norm_t ** 2 - ctx.w_t ** 2,
        lower=[],
        upper=[("crawford_gap_min", gap.best_value)],
        tol=tol,
        center_kind=CENTER_GAP,
        details={"lambda_re": lam.real, "lambda_im": lam.imag, "evaluations": gap.evaluations},
    )


SUPPORTED_BOUNDS: Dict[BoundId, Evaluator] = {
    BoundId.CLASSIC_NORM: _classic_norm,
    BoundId.RADIUS_PRODUCT: _radius_product,
    BoundId.DOUBLE_RADIUS: _double_radius,
    BoundId.DIST_REFINED: _dist_refined,
    BoundId.ABS_UPPER: _abs_upper,
    BoundId.CARTESIAN_UPPER: _cartesian_upper,
    BoundId.NORMDIFF_LOWER: _normdiff_lower,
    BoundId.ROT_NORMDIFF_LOWER: _rot_normdiff_lower,
    BoundId.SQ_NORMDIFF_LOWER: _sq_normdiff_lower,
    BoundId.SQ_ROT_LOWER: _sq_rot_lower,
    BoundId.CRAWFORD_GAP: _crawford_gap,
}


def get_evaluator(bound_id) -> Evaluator:
    """Look up the evaluator for a bound id (enum member or its name)."""
    bound_id = BoundId.parse(bound_id)
    evaluator = SUPPORTED_BOUNDS.get(bound_id)
    if evaluator is None:
        logger.error(f"No evaluator registered for {bound_id}. Supported: {[b.value for b in SUPPORTED_BOUNDS]}")
        raise UnknownBoundError(f"No evaluator registered for {bound_id}")
    return evaluator


def _resolve_tol(p: OperatorPair, tol: Optional[float]) -> float:
    tol = default_tol(p) if tol is None else tol
    if not tol > 0:
        raise InvalidToleranceError(f"Tolerance must be positive, got {tol}")
    return tol


def eval_bound(bound_id, p: OperatorPair, tol: Optional[float] = None,
               context: Optional[PairContext] = None) -> BoundReport:
    """
    Evaluate one inequality chain on (a, b).

    Args:
        bound_id: BoundId member or its name.
        p: The operator pair.
        tol: Slack allowed per chain step; defaults to bound_tol*(1+||a||^2||b||^2).
        context: Shared lazily computed quantities (created when omitted).

    Raises:
        UnknownBoundError: for an invalid id.
        InvalidToleranceError: if tol <= 0.
    """
    evaluator = get_evaluator(bound_id)
    tol = _resolve_tol(p, tol)
    report = evaluator(context or PairContext(p), tol)
    if not report.holds:
        logger.warning(f"{report.id.value} violated on {p.dims} pair: min_slack={report.min_slack:.3e}, tol={tol:.3e}")
    return report


def _tightest(reports: List[BoundReport], gap_of, tol: float) -> List[BoundId]:
    gaps = [(r.id, gap_of(r)) for r in reports]
    gaps = [(i, g) for i, g in gaps if g is not None and np.isfinite(g)]
    if not gaps:
        return []
    best = min(g for _, g in gaps)
    return [i for i, g in gaps if g <= best + tol]


def eval_all(p: OperatorPair, tol: Optional[float] = None,
             context: Optional[PairContext] = None) -> BoundSummary:
    """
    Evaluate every bound on one pair, sharing a single PairContext.

    A bound whose evaluation fails is reported with its error code and
    holds=False; the remaining bounds still run.
    """
    tol = _resolve_tol(p, tol)
    ctx = context or PairContext(p)
    reports = []
    for bound_id in BoundId:
        try:
            reports.append(eval_bound(bound_id, p, tol, context=ctx))
        except (NumericalRadiusError, ArithmeticError, np.linalg.LinAlgError) as e:
            logger.error(f"Bound {bound_id.value} failed on {p.dims} pair: {e}", exc_info=True)
            reports.append(BoundReport.failed(bound_id, tol, error_code(e)))

    summary = BoundSummary(
        reports=reports,
        tightest_lower=_tightest(reports, lambda r: r.lower_gap, tol),
        tightest_upper=_tightest(reports, lambda r: r.upper_gap, tol),
    )
    logger.debug(f"Evaluated {len(reports)} bounds on {p.dims} pair; "
                 f"tightest lower {[b.value for b in summary.tightest_lower]}, "
                 f"upper {[b.value for b in summary.tightest_upper]}")
    return summary
