"""
Scalar-shift search for the Crawford-gap upper bound

    h(lambda) = ||T - lambda I||^2 - c(T - lambda I)^2,

which dominates ||T||^2 - w(T)^2 at every lambda. h is not convex, so the
reported minimum is only an upper estimate of its infimum.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import minimize

from config import get_setting
from linalg import InvalidToleranceError, identity, operator_norm
from numrange import SupportFunction, crawford_number
from .distance import disk_grid, pick_minimum

logger = logging.getLogger(__name__)

MIN_GAP_GRID = 9


@dataclass(frozen=True)
class CrawfordGapResult:
    best_value: float
    lambda_star: complex
    grid_values: Tuple[Tuple[complex, float], ...]

    @property
    def evaluations(self) -> int:
        return len(self.grid_values)


def shifted_norms(t: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """||t - lambda I|| for each lambda."""
    lams = np.atleast_1d(np.asarray(lams, dtype=np.complex128))
    eye = np.eye(t.shape[0], dtype=np.complex128)
    out = np.empty(lams.size)
    step = max(1, (1 << 20) // (t.shape[0] ** 2))
    for start in range(0, lams.size, step):
        stack = t[None, :, :] - lams[start:start + step, None, None] * eye
        out[start:start + step] = np.linalg.norm(stack, ord=2, axis=(1, 2))
    return out


def gap_value(t: np.ndarray, lam: complex, tol: float = None) -> float:
    """h(lambda) with an exact Crawford number."""
    shifted = t - complex(lam) * identity(t.shape[0])
    return operator_norm(shifted) ** 2 - crawford_number(shifted, tol).value ** 2


def crawford_gap_rhs(t: np.ndarray, n_grid: int = None, tol: float = None) -> CrawfordGapResult:
    """
    Minimize h over a grid on |lambda - tr(t)/dim| <= 2||t||, then refine.

    Args:
        t: Square complex matrix (typically A kron B).
        n_grid: Grid points per axis (>= 9, defaults to gap_grid).
        tol: Tolerance for the Crawford numbers and the local refinement.

    Returns:
        CrawfordGapResult listing every evaluated (lambda, h(lambda)) pair.
    """
    n_grid = get_setting("gap_grid") if n_grid is None else n_grid
    tol = get_setting("radius_tol") if tol is None else tol
    if n_grid < MIN_GAP_GRID:
        raise ValueError(f"Crawford-gap grid needs at least {MIN_GAP_GRID} points per axis, got {n_grid}")
    if not tol > 0:
        raise InvalidToleranceError(f"Tolerance must be positive, got {tol}")

    dim = t.shape[0]
    center = complex(np.trace(t)) / dim
    radius = 2.0 * operator_norm(t)
    support = SupportFunction.sample(t)
    records: List[Tuple[complex, float]] = []

    # Grid Crawford numbers are lower estimates, so grid h values only overestimate.
    def evaluate(lams: np.ndarray) -> np.ndarray:
        h = shifted_norms(t, lams) ** 2 - support.shifted_crawford(lams) ** 2
        records.extend(zip((complex(x) for x in lams), (float(v) for v in h)))
        return h

    lams = disk_grid(center, radius, n_grid)
    values = evaluate(lams)
    best = pick_minimum(lams, values, atol=1e-15 * (1.0 + radius ** 2))

    if radius > 0.0:
        step = 2.0 * radius / (n_grid - 1)
        start = lams[best]
        res = minimize(lambda xy: float(evaluate(np.array([complex(xy[0], xy[1])]))[0]),
                       np.array([start.real, start.imag]), method="Nelder-Mead",
                       options={"initial_simplex": np.array([[start.real, start.imag],
                                                             [start.real + step, start.imag],
                                                             [start.real, start.imag + step]]),
                                "xatol": tol, "fatol": tol, "maxfev": get_setting("dist_budget")})
        logger.debug(f"Crawford-gap refinement: {res.nfev} evaluations, h={res.fun:.12g}")

    all_lams = np.array([lam for lam, _ in records])
    all_values = np.array([h for _, h in records])
    k = pick_minimum(all_lams, all_values, atol=1e-15 * (1.0 + radius ** 2))
    lam_star = complex(all_lams[k])
    exact = gap_value(t, lam_star, tol)
    records.append((lam_star, exact))

    best_value = min(h for _, h in records)
    logger.debug(f"Crawford-gap upper estimate {best_value:.12g} at lambda={lam_star:.6g} "
                 f"over {len(records)} evaluations")
    return CrawfordGapResult(best_value=best_value, lambda_star=lam_star, grid_values=tuple(records))
