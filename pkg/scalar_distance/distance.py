"""
Numerical radius distance from the scalar matrices:

    d(A) = inf over complex lambda of w(A - lambda I).

g(lambda) = w(A - lambda I) is convex and g(lambda) >= |lambda| - w(A), so a
minimizer lies in the disk |lambda - tr(A)/n| <= 2 w(A). The search evaluates g
through a cached support function, seeds a restarted Nelder-Mead descent from
the best point of a coarse grid, and reports the exact w(A - lambda* I).
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import minimize

from config import get_setting
from linalg import BudgetExceededError, InvalidToleranceError, identity
from numrange import SupportFunction, numerical_radius

logger = logging.getLogger(__name__)

# Restarts of the simplex around the incumbent, each with a smaller simplex.
MAX_RESTARTS = 3
RESTART_SHRINK = 0.1


@dataclass(frozen=True)
class ScalarDistanceResult:
    value: float
    lambda_star: complex
    iterations: int
    box_radius: float


def disk_grid(center: complex, radius: float, n_grid: int) -> np.ndarray:
    """Points of an n_grid x n_grid square grid lying in the closed disk, in grid order."""
    axis = np.linspace(-radius, radius, n_grid)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    offsets = (xs + 1j * ys).ravel()
    inside = np.abs(offsets) <= radius * (1.0 + 1e-12)
    return center + offsets[inside]


def pick_minimum(lams: np.ndarray, values: np.ndarray, atol: float) -> int:
    """
    Index of the smallest value; values within atol of the minimum tie, and
    ties go to the smallest |lambda|, then the smallest arg in [0, 2*pi).
    """
    tied = np.flatnonzero(values <= values.min() + atol)
    args = np.mod(np.angle(lams[tied]), 2.0 * np.pi)
    order = np.lexsort((args, np.round(np.abs(lams[tied]), 15)))
    return int(tied[order[0]])


def restarted_simplex(func, start: complex, step: float, tol: float, budget: int) -> Tuple[complex, float, int]:
    """
    Nelder-Mead over the complex plane, restarted around the incumbent with a
    shrinking simplex until a restart stops improving.

    Raises:
        BudgetExceededError: if the evaluation budget runs out before convergence.
    """
    x = np.array([start.real, start.imag])
    fx = float(func(x))
    used = 1
    for restart in range(MAX_RESTARTS + 1):
        simplex = np.array([x, x + [step, 0.0], x + [0.0, step]])
        res = minimize(func, x, method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": tol, "fatol": tol,
                                "maxfev": max(budget - used, 1)})
        used += int(res.nfev)
        if not res.success and used >= budget:
            if restart == 0:
                raise BudgetExceededError(f"Simplex descent used {used} of {budget} evaluations without converging")
            break
        improved = fx - float(res.fun)
        if float(res.fun) < fx:
            x, fx = np.asarray(res.x, dtype=float), float(res.fun)
        logger.debug(f"Simplex restart {restart}: f={fx:.12g}, improvement {improved:.3e}, {used} evaluations")
        if improved <= tol:
            break
        step *= RESTART_SHRINK
    return complex(x[0], x[1]), fx, used


def distance_to_scalars(a: np.ndarray, tol: float = None) -> ScalarDistanceResult:
    """
    Compute d(a) = min over lambda of w(a - lambda I).

    Args:
        a: Square complex matrix.
        tol: Relative tolerance of the descent (defaults to radius_tol).

    Returns:
        ScalarDistanceResult with value = w(a - lambda_star I).

    Raises:
        InvalidToleranceError: if tol <= 0.
        BudgetExceededError: if the descent exceeds dist_budget evaluations.
    """
    tol = get_setting("radius_tol") if tol is None else tol
    if not tol > 0:
        raise InvalidToleranceError(f"Tolerance must be positive, got {tol}")
    n = a.shape[0]
    center = complex(np.trace(a)) / n
    w = numerical_radius(a, tol).value
    box_radius = 2.0 * w
    if w == 0.0:
        return ScalarDistanceResult(value=0.0, lambda_star=0j, iterations=0, box_radius=0.0)

    support = SupportFunction.sample(a)
    lams = disk_grid(center, box_radius, get_setting("dist_grid"))
    values = support.shifted_radius(lams)
    best = pick_minimum(lams, values, atol=1e-15 * (1.0 + w))
    step = 2.0 * box_radius / (get_setting("dist_grid") - 1)

    def g(xy: np.ndarray) -> float:
        return float(support.shifted_radius(complex(xy[0], xy[1]))[0])

    lam, _, used = restarted_simplex(g, complex(lams[best]), step, tol * max(w, 1.0),
                                     get_setting("dist_budget"))
    if g([lams[best].real, lams[best].imag]) <= g([lam.real, lam.imag]):
        lam = complex(lams[best])

    value = numerical_radius(a - lam * identity(n), tol).value
    if value > w:
        # lambda = 0 is always admissible
        lam, value = 0j, w
    logger.debug(f"d(A)={value:.12g} at lambda={lam:.6g} after {used} descent evaluations")
    return ScalarDistanceResult(value=value, lambda_star=lam, iterations=used, box_radius=box_radius)
