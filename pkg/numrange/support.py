"""
Batched sweeps over the Hermitian family theta -> Re(e^{i theta} A).

With A = R + iJ (R, J Hermitian), Re(e^{i theta} A) = cos(theta) R - sin(theta) J
and Im(e^{i theta} A) = sin(theta) R + cos(theta) J. The largest eigenvalue of
the real part is the support function of the numerical range W(A) in the
direction e^{-i theta}; its smallest eigenvalue is minus the support function
in the opposite direction.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from config import get_setting
from linalg import re_part, im_part, solve_hermitian

logger = logging.getLogger(__name__)

# Upper bound on complex entries held by one batched eigensolve.
CHUNK_ENTRIES = 1 << 21


def _chunks(count: int, per_item: int) -> Iterator[slice]:
    step = max(1, CHUNK_ENTRIES // max(per_item, 1))
    for start in range(0, count, step):
        yield slice(start, min(count, start + step))


def hermitian_family(a: np.ndarray, thetas: np.ndarray, part: str = "re") -> np.ndarray:
    """Stack of Re(e^{i theta} A) (or Im(...) when part == 'im') for each theta."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    r, j = re_part(a), im_part(a)
    c, s = np.cos(thetas)[:, None, None], np.sin(thetas)[:, None, None]
    if part == "im":
        return s * r + c * j
    return c * r - s * j


def family_eigvalsh(a: np.ndarray, thetas: np.ndarray, part: str = "re") -> np.ndarray:
    """Ascending eigenvalues of every family member, shape (len(thetas), n)."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    n = a.shape[0]
    out = np.empty((thetas.size, n))
    if get_setting("eig_method") == "jacobi":
        for k, h in enumerate(hermitian_family(a, thetas, part)):
            out[k] = solve_hermitian(h).eigenvalues
        return out
    for sl in _chunks(thetas.size, n * n):
        out[sl] = np.linalg.eigvalsh(hermitian_family(a, thetas[sl], part))
    return out


def family_top_eigh(a: np.ndarray, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Largest eigenvalue and its unit eigenvector for every Re(e^{i theta} A)."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    n = a.shape[0]
    values = np.empty(thetas.size)
    vectors = np.empty((thetas.size, n), dtype=np.complex128)
    if get_setting("eig_method") == "jacobi":
        for k, h in enumerate(hermitian_family(a, thetas)):
            eig = solve_hermitian(h)
            values[k], vectors[k] = eig.eigenvalues[-1], eig.eigenvectors[:, -1]
        return values, vectors
    for sl in _chunks(thetas.size, n * n):
        w, v = np.linalg.eigh(hermitian_family(a, thetas[sl]))
        values[sl] = w[:, -1]
        vectors[sl] = v[:, :, -1]
    return values, vectors


def uniform_thetas(m: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(m) / m


@dataclass(frozen=True)
class SupportFunction:
    """
    Cached extreme eigenvalues of Re(e^{i theta} A) on a uniform theta-grid.

    Shifting A by a scalar only shifts each family member by a multiple of I:
    Re(e^{i theta}(A - lambda I)) = Re(e^{i theta} A) - Re(e^{i theta} lambda) I,
    so w(A - lambda I) and c(A - lambda I) for many lambda reuse one sweep.
    Grid estimates never exceed the exact values.
    """

    thetas: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @classmethod
    def sample(cls, a: np.ndarray, m: int = None) -> "SupportFunction":
        m = get_setting("support_grid") if m is None else m
        if m < 8:
            raise ValueError(f"Support function needs at least 8 directions, got {m}")
        thetas = uniform_thetas(m)
        values = family_eigvalsh(a, thetas)
        logger.debug(f"Sampled support function of {a.shape[0]}x{a.shape[0]} matrix on {m} directions")
        return cls(thetas=thetas, upper=values[:, -1].copy(), lower=values[:, 0].copy())

    def _shift_terms(self, lams: np.ndarray) -> Iterator[Tuple[slice, np.ndarray]]:
        lams = np.atleast_1d(np.asarray(lams, dtype=np.complex128))
        c, s = np.cos(self.thetas), np.sin(self.thetas)
        for sl in _chunks(lams.size, self.thetas.size):
            # Re(e^{i theta} lambda) for each (lambda, theta)
            yield sl, np.outer(lams[sl].real, c) - np.outer(lams[sl].imag, s)

    def shifted_radius(self, lams) -> np.ndarray:
        """Grid estimate of w(A - lambda I) for each lambda."""
        lams = np.atleast_1d(np.asarray(lams, dtype=np.complex128))
        out = np.empty(lams.size)
        for sl, shift in self._shift_terms(lams):
            out[sl] = np.max(self.upper[None, :] - shift, axis=1)
        return out

    def shifted_crawford(self, lams) -> np.ndarray:
        """Grid estimate of c(A - lambda I) for each lambda."""
        lams = np.atleast_1d(np.asarray(lams, dtype=np.complex128))
        out = np.empty(lams.size)
        for sl, shift in self._shift_terms(lams):
            out[sl] = np.maximum(np.max(self.lower[None, :] - shift, axis=1), 0.0)
        return out
