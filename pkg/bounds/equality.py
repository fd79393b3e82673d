"""
Equality characterizations and the remarks around them.

``check_equality_half`` and ``check_equality_quarter`` test the rotated norm
identities "for all theta" on a uniform theta-grid. The rotated norms are
Lipschitz in theta, so grid consistency at tol certifies the continuum
statement at the looser ``continuum_tolerance`` recorded in the report.
"""

import logging
from typing import Optional

import numpy as np

from config import get_setting
from numrange import family_eigvalsh, uniform_thetas
from .models import EqualityKind, EqualityReport, OperatorPair, RemarkReport
from .registry import PairContext, default_tol

logger = logging.getLogger(__name__)

MIN_EQUALITY_GRID = 4


def _rotated_norms(t: np.ndarray, grid: int):
    """
    ||e^{i theta} T + e^{-i theta} T*|| and ||e^{i theta} T - e^{-i theta} T*||
    on the grid, via 2||Re(e^{i theta} T)|| and 2||Im(e^{i theta} T)||.
    """
    thetas = uniform_thetas(grid)
    re_rows = family_eigvalsh(t, thetas, "re")
    im_rows = family_eigvalsh(t, thetas, "im")
    plus = 2.0 * np.maximum(np.abs(re_rows[:, 0]), np.abs(re_rows[:, -1]))
    minus = 2.0 * np.maximum(np.abs(im_rows[:, 0]), np.abs(im_rows[:, -1]))
    return plus, minus


def _check_grid(grid: Optional[int]) -> int:
    grid = get_setting("equality_grid") if grid is None else grid
    if grid < MIN_EQUALITY_GRID:
        raise ValueError(f"Equality grid needs at least {MIN_EQUALITY_GRID} points, got {grid}")
    return grid


def check_equality_half(p: OperatorPair, grid: Optional[int] = None, tol: Optional[float] = None,
                        context: Optional[PairContext] = None) -> EqualityReport:
    """
    Test ||e^{i theta}T + e^{-i theta}T*|| = ||e^{i theta}T - e^{-i theta}T*|| = ||A|| ||B||
    for every grid theta, with T = A kron B.
    """
    grid = _check_grid(grid)
    tol = default_tol(p) if tol is None else tol
    ctx = context or PairContext(p)
    target = ctx.norm_product
    plus, minus = _rotated_norms(ctx.t, grid)
    dev_plus = float(np.max(np.abs(plus - target)))
    dev_minus = float(np.max(np.abs(minus - target)))
    # d/dtheta of both norms is bounded by 2||T||
    continuum = tol + 2.0 * np.pi * target / grid
    report = EqualityReport(
        kind=EqualityKind.HALF_NORM, grid_size=grid, target=target,
        max_deviation_plus=dev_plus, max_deviation_minus=dev_minus,
        consistent=dev_plus <= tol and dev_minus <= tol, tol=tol, continuum_tolerance=continuum,
    )
    logger.debug(f"Half-norm equality on {p.dims} pair: deviations {dev_plus:.3e}/{dev_minus:.3e}, "
                 f"consistent={report.consistent}")
    return report


def check_equality_quarter(p: OperatorPair, grid: Optional[int] = None, tol: Optional[float] = None,
                           context: Optional[PairContext] = None) -> EqualityReport:
    """Same grid test with squared norms against ||A*A kron B*B + AA* kron BB*||."""
    grid = _check_grid(grid)
    tol = default_tol(p) if tol is None else tol
    ctx = context or PairContext(p)
    target = ctx.cartesian_norm
    plus, minus = _rotated_norms(ctx.t, grid)
    dev_plus = float(np.max(np.abs(plus ** 2 - target)))
    dev_minus = float(np.max(np.abs(minus ** 2 - target)))
    # squared norms are bounded by 4||T||^2 and their derivative by 8||T||^2
    continuum = tol + 8.0 * np.pi * ctx.norm_product ** 2 / grid
    report = EqualityReport(
        kind=EqualityKind.QUARTER_SQUARED, grid_size=grid, target=target,
        max_deviation_plus=dev_plus, max_deviation_minus=dev_minus,
        consistent=dev_plus <= tol and dev_minus <= tol, tol=tol, continuum_tolerance=continuum,
    )
    logger.debug(f"Quarter-squared equality on {p.dims} pair: deviations {dev_plus:.3e}/{dev_minus:.3e}, "
                 f"consistent={report.consistent}")
    return report


def check_corollary(p: OperatorPair, tol: Optional[float] = None,
                    context: Optional[PairContext] = None) -> bool:
    """
    w(A kron B) = ||A|| ||B|| / 2 implies ||T + T*|| = ||T - T*|| = ||A|| ||B||.

    Vacuously true when the premise fails.
    """
    tol = default_tol(p) if tol is None else tol
    ctx = context or PairContext(p)
    if abs(ctx.w_t - 0.5 * ctx.norm_product) > tol:
        return True
    holds = (abs(ctx.norm_sum - ctx.norm_product) <= 10.0 * tol
             and abs(ctx.norm_diff - ctx.norm_product) <= 10.0 * tol)
    if not holds:
        logger.warning(f"Corollary fails on {p.dims} pair: ||T+T*||={ctx.norm_sum:.12g}, "
                       f"||T-T*||={ctx.norm_diff:.12g}, ||A||||B||={ctx.norm_product:.12g}")
    return holds


def check_rotated_remarks(p: OperatorPair, tol: Optional[float] = None,
                          context: Optional[PairContext] = None) -> RemarkReport:
    """
    Forward directions of the rotated-norm remarks:

    - w(T) = ||A|| ||B|| / 2 forces ||T + iT*|| = ||T - iT*||;
    - w(T)^2 = ||A*A kron B*B + AA* kron BB*|| / 4 forces the same squared norms.

    The converses are not claimed. A pair whose rotated norms agree while the
    first premise fails is flagged as a candidate counterexample to the converse.
    """
    tol = default_tol(p) if tol is None else tol
    ctx = context or PairContext(p)
    half_premise = abs(ctx.w_t - 0.5 * ctx.norm_product) <= tol
    quarter_premise = abs(ctx.w_t ** 2 - 0.25 * ctx.cartesian_norm) <= tol
    rotated_gap = abs(ctx.norm_rot_plus - ctx.norm_rot_minus)
    squared_gap = abs(ctx.norm_rot_plus ** 2 - ctx.norm_rot_minus ** 2)

    report = RemarkReport(
        half_premise=half_premise,
        quarter_premise=quarter_premise,
        rotated_gap=rotated_gap,
        half_implication_holds=(not half_premise) or rotated_gap <= 10.0 * tol,
        quarter_implication_holds=(not quarter_premise) or squared_gap <= 10.0 * tol,
        candidate_counterexample=rotated_gap <= tol and not half_premise,
        tol=tol,
    )
    if report.candidate_counterexample:
        logger.warning(f"Rotated norms agree on {p.dims} pair (gap {rotated_gap:.3e}) "
                       f"but w(T)={ctx.w_t:.12g} != ||A||||B||/2={0.5 * ctx.norm_product:.12g}")
    return report


def check_double_radius_remark(p: OperatorPair, tol: Optional[float] = None,
                               context: Optional[PairContext] = None) -> bool:
    """
    For nonzero A and B, w(A kron B) = 2w(A)w(B) forces d(A) = w(A) and
    d(B) = w(B). Vacuously true otherwise.
    """
    tol = default_tol(p) if tol is None else tol
    ctx = context or PairContext(p)
    if ctx.w_a == 0.0 or ctx.w_b == 0.0 or abs(ctx.w_t - 2.0 * ctx.w_a * ctx.w_b) > tol:
        return True
    holds = abs(ctx.d_a - ctx.w_a) <= tol and abs(ctx.d_b - ctx.w_b) <= tol
    if not holds:
        logger.warning(f"w(T)=2w(A)w(B) on {p.dims} pair but d(A)={ctx.d_a:.12g} vs w(A)={ctx.w_a:.12g}, "
                       f"d(B)={ctx.d_b:.12g} vs w(B)={ctx.w_b:.12g}")
    return holds
