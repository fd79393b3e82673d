"""
Numerical radius and Crawford number by rotation sweep.

w(A) = max over theta of lambda_max(Re(e^{i theta} A)) and
c(A) = max(0, max over theta of lambda_min(Re(e^{i theta} A))).

Both objectives are Lipschitz in theta with constant ||A||, but neither is
unimodal, so the maximization runs in two stages: a uniform grid fine enough
that every near-optimal peak is bracketed, followed by bounded Brent
refinement inside the bracket of every near-optimal local maximum.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from config import get_setting
from linalg import InvalidToleranceError, operator_norm, solve_hermitian
from .support import family_eigvalsh, hermitian_family, uniform_thetas

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

# Maps the (m, n) ascending eigenvalue rows of a family sweep to the objective.
Reducer = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RadiusResult:
    value: float
    theta_star: float
    certificate: np.ndarray
    evaluations: int


@dataclass(frozen=True)
class CrawfordResult:
    value: float
    theta_star: float
    attained_inside: bool
    evaluations: int = 0


def _check_tol(tol: float):
    if not tol > 0:
        raise InvalidToleranceError(f"Tolerance must be positive, got {tol}")


def _grid_size(norm: float, tol: float) -> int:
    """Smallest m with norm*pi/m <= tol/2, clamped to the configured range."""
    m = math.ceil(TWO_PI * norm / tol)
    return int(min(max(m, get_setting("radius_grid_min")), get_setting("radius_grid_max")))


def _top(rows: np.ndarray) -> np.ndarray:
    return rows[:, -1]


def _bottom(rows: np.ndarray) -> np.ndarray:
    return rows[:, 0]


def _spectral(rows: np.ndarray) -> np.ndarray:
    return np.maximum(np.abs(rows[:, 0]), np.abs(rows[:, -1]))


def _peak_groups(values: np.ndarray, peaks: np.ndarray, tol: float) -> List[Tuple[int, int]]:
    """
    Merge neighbouring grid peaks joined by a stretch that is flat within tol.

    Returns (first, last) index pairs in circular order; last may exceed m - 1
    when a group wraps past theta = 0.
    """
    m = values.size
    groups = []
    start = prev = int(peaks[0])
    for k in peaks[1:]:
        k = int(k)
        stretch = values[prev:k + 1]
        if stretch.max() - stretch.min() <= tol:
            prev = k
            continue
        groups.append((start, prev))
        start = prev = k
    groups.append((start, prev))

    if len(groups) > 1:
        (first, first_end), (last, last_end) = groups[0], groups[-1]
        stretch = np.concatenate((values[last_end:], values[:first + 1]))
        if stretch.max() - stretch.min() <= tol:
            groups[0] = (last, first_end + m)
            groups.pop()
    return groups


def _sweep_maximize(a: np.ndarray, tol: float, reduce: Reducer, part: str = "re") -> Tuple[float, float, int]:
    """
    Maximize reduce(eigvalsh(family(theta))) over the full circle.

    Every grid local maximum within the Lipschitz slack of the grid maximum is
    refined; flat runs of peaks share one bracket.

    Returns:
        (value, theta_star, evaluations) with theta_star in [0, 2*pi).
        Among equal maxima the smallest theta wins.
    """
    norm = operator_norm(a)
    m = _grid_size(norm, tol)
    thetas = uniform_thetas(m)
    values = reduce(family_eigvalsh(a, thetas, part))
    evaluations = m

    best_k = int(np.argmax(values))
    best_value, best_theta = float(values[best_k]), float(thetas[best_k])
    if norm == 0.0:
        return best_value, best_theta, evaluations

    # A peak higher than best_value can only sit next to a grid point within
    # norm*pi/m of it.
    slack = norm * np.pi / m
    left, right = np.roll(values, 1), np.roll(values, -1)
    is_peak = (values >= left) & (values >= right) & (values >= best_value - slack)
    groups = _peak_groups(values, np.flatnonzero(is_peak), tol)

    step = TWO_PI / m
    xatol = max(tol / (2.0 * norm), 1e-12)

    def objective(theta: float) -> float:
        return -float(reduce(family_eigvalsh(a, [theta], part))[0])

    for first, last in groups:
        lo, hi = (first - 1) * step, (last + 1) * step
        res = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": xatol})
        evaluations += int(res.nfev)
        value, theta = -float(res.fun), float(res.x) % TWO_PI
        if value > best_value or (value == best_value and theta < best_theta):
            best_value, best_theta = value, theta

    logger.debug(f"Sweep maximum {best_value:.12g} at theta={best_theta:.6f} "
                 f"(grid {m}, {len(groups)} refined, {evaluations} eigensolves)")
    return best_value, best_theta, evaluations


def numerical_radius(a: np.ndarray, tol: float = None) -> RadiusResult:
    """
    Numerical radius w(a) with a certifying unit vector.

    Args:
        a: Square complex matrix.
        tol: Absolute tolerance (defaults to the radius_tol setting).

    Returns:
        RadiusResult whose certificate x satisfies |<a x, x>| ~ value.

    Raises:
        InvalidToleranceError: if tol <= 0.
    """
    tol = get_setting("radius_tol") if tol is None else tol
    _check_tol(tol)
    n = a.shape[0]
    if not np.any(a):
        cert = np.zeros(n, dtype=np.complex128)
        cert[0] = 1.0
        cert.setflags(write=False)
        return RadiusResult(value=0.0, theta_star=0.0, certificate=cert, evaluations=0)

    value, theta, evaluations = _sweep_maximize(a, tol, _top)
    eig = solve_hermitian(hermitian_family(a, [theta])[0])
    cert = np.array(eig.eigenvectors[:, -1], dtype=np.complex128)
    cert /= np.linalg.norm(cert)
    cert.setflags(write=False)
    return RadiusResult(value=max(value, 0.0), theta_star=theta, certificate=cert, evaluations=evaluations + 1)


def numerical_radius_imag(a: np.ndarray, tol: float = None) -> float:
    """w(a) computed as sup over theta of ||Im(e^{i theta} a)||."""
    tol = get_setting("radius_tol") if tol is None else tol
    _check_tol(tol)
    if not np.any(a):
        return 0.0
    value, _, _ = _sweep_maximize(a, tol, _spectral, part="im")
    return value


def crawford_number(a: np.ndarray, tol: float = None) -> CrawfordResult:
    """
    Crawford number c(a) = distance from 0 to the numerical range.

    attained_inside is set when the support-function maximum is <= tol,
    i.e. 0 lies in W(a) numerically.
    """
    tol = get_setting("radius_tol") if tol is None else tol
    _check_tol(tol)
    if not np.any(a):
        return CrawfordResult(value=0.0, theta_star=0.0, attained_inside=True, evaluations=0)
    value, theta, evaluations = _sweep_maximize(a, tol, _bottom)
    return CrawfordResult(value=max(value, 0.0), theta_star=theta,
                          attained_inside=value <= tol, evaluations=evaluations)


def radius_grid_oracle(a: np.ndarray, m: int) -> float:
    """Plain max of lambda_max(Re(e^{i theta} a)) over m uniform directions."""
    if m < 8:
        raise ValueError(f"Oracle grid needs at least 8 directions, got {m}")
    return float(np.max(family_eigvalsh(a, uniform_thetas(m))[:, -1]))
