"""
Hermitian eigensolvers.

``hermitian_eig`` is a cyclic complex Jacobi solver: each sweep visits every
off-diagonal pair (p, q), removes the phase of ``h[p, q]`` with a diagonal
unitary and then annihilates the now real 2x2 block with a plane rotation
(the real rotation follows the Numerical Recipes formulation). Sweeps repeat
until the off-diagonal Frobenius mass drops below ``tol * ||h||_F``.

``solve_hermitian`` is the entry point used by the rest of the toolkit. It
dispatches to the Jacobi solver or to LAPACK (``numpy.linalg.eigh``)
according to the ``eig_method`` setting; both honour the same contract.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import get_setting
from .errors import NotHermitianError, NoConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_EIG_TOL = 1e-13
HERMITIAN_TOL = 1e-10
SCALE_FLOOR = 1e-14


@dataclass(frozen=True)
class EigDecomposition:
    """Ascending eigenvalues and the unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0
    method: str = "jacobi"

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def residual(self, h: np.ndarray) -> float:
        """Largest ||h v_k - lambda_k v_k|| over all eigenpairs."""
        r = h @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0))) if self.dim else 0.0


def symmetrize(h: np.ndarray) -> np.ndarray:
    """Return (h + h*)/2, exactly Hermitian in floating point."""
    return 0.5 * (h + h.conj().T)


def check_hermitian(h: np.ndarray) -> np.ndarray:
    """Validate the Hermitian precondition and return the symmetrized matrix."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"Expected a square matrix, got shape {h.shape}")
    scale = np.linalg.norm(h)
    asym = np.linalg.norm(h - h.conj().T)
    if asym > HERMITIAN_TOL * max(1.0, scale):
        raise NotHermitianError(f"Matrix is not Hermitian: ||h - h*||_F = {asym:.3e} (scale {scale:.3e})")
    return symmetrize(h)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _sorted_decomposition(values, vectors, sweeps, method) -> EigDecomposition:
    order = np.argsort(values, kind="stable")
    return EigDecomposition(
        eigenvalues=_freeze(np.ascontiguousarray(values[order])),
        eigenvectors=_freeze(np.ascontiguousarray(vectors[:, order])),
        sweeps=sweeps,
        method=method,
    )


def hermitian_eig(h: np.ndarray, tol: float = DEFAULT_EIG_TOL, max_sweeps: Optional[int] = None) -> EigDecomposition:
    """
    Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Args:
        h: Hermitian matrix (checked to 1e-10 relative).
        tol: Relative off-diagonal Frobenius mass at which sweeping stops.
        max_sweeps: Sweep cap; defaults to the jacobi_max_sweeps setting.

    Returns:
        EigDecomposition with ascending eigenvalues.

    Raises:
        NotHermitianError: if h is not Hermitian within tolerance.
        NoConvergenceError: if the sweep cap is reached.
    """
    a = check_hermitian(h).copy()
    n = a.shape[0]
    max_sweeps = get_setting("jacobi_max_sweeps") if max_sweeps is None else max_sweeps
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * max(np.linalg.norm(a), SCALE_FLOOR)

    for sweep in range(max_sweeps + 1):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if off <= threshold:
            logger.debug(f"Jacobi converged on {n}x{n} matrix after {sweep} sweeps (off={off:.3e})")
            return _sorted_decomposition(np.real(np.diag(a)).copy(), v, sweep, "jacobi")
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                mag = abs(beta)
                if mag <= np.finfo(float).tiny:
                    continue
                alpha, gamma = a[p, p].real, a[q, q].real
                theta = (gamma - alpha) / (2.0 * mag)
                if np.isinf(theta):
                    continue
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                phase = np.conj(beta) / mag  # e^{-i phi}
                rot = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)

                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot

    raise NoConvergenceError(f"Jacobi did not converge within {max_sweeps} sweeps on a {n}x{n} matrix")


def solve_hermitian(h: np.ndarray, tol: float = DEFAULT_EIG_TOL, method: Optional[str] = None) -> EigDecomposition:
    """Diagonalize a Hermitian matrix with the configured eigensolver."""
    method = method or get_setting("eig_method")
    if method == "jacobi":
        return hermitian_eig(h, tol)
    a = check_hermitian(h)
    values, vectors = np.linalg.eigh(a)
    return _sorted_decomposition(values, vectors, 0, "lapack")
