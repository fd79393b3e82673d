"""
Dense complex matrix primitives.

A ComplexMatrix is represented as a read-only, square, finite
``numpy.ndarray`` of dtype complex128. Every function here is pure: inputs
are never modified and outputs are frozen copies.
"""

import logging
from typing import Optional, Union

import numpy as np

from config import get_setting
from .errors import (
    DimensionMismatchError,
    MatrixParseError,
    NotPSDError,
    SizeLimitError,
)
from .jacobi import solve_hermitian, symmetrize, SCALE_FLOOR

logger = logging.getLogger(__name__)

ComplexScalar = Union[complex, float, int]
PSD_CLAMP = 1e-12
PSD_TOL = 1e-10


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_matrix(data) -> np.ndarray:
    """
    Validate and copy array-like data into a read-only ComplexMatrix.

    Raises:
        MatrixParseError: if the data is not a finite square matrix of dim >= 1.
    """
    try:
        arr = np.array(data, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise MatrixParseError(f"Cannot convert input to a complex matrix: {e}") from e
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MatrixParseError(f"Matrix must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise MatrixParseError("Matrix dimension must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise MatrixParseError("Matrix entries must be finite (no NaN/Inf)")
    return _freeze(arr)


def identity(n: int) -> np.ndarray:
    if n < 1:
        raise MatrixParseError(f"Identity dimension must be at least 1, got {n}")
    return _freeze(np.eye(n, dtype=np.complex128))


def _same_dim(a: np.ndarray, b: np.ndarray, op: str):
    if a.shape != b.shape:
        raise DimensionMismatchError(f"{op}: dimension mismatch {a.shape} vs {b.shape}")


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b, "matmul")
    return _freeze(a @ b)


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b, "add")
    return _freeze(a + b)


def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _same_dim(a, b, "sub")
    return _freeze(a - b)


def scale(alpha: ComplexScalar, a: np.ndarray) -> np.ndarray:
    return _freeze(complex(alpha) * a)


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return _freeze(np.ascontiguousarray(a.conj().T))


def kron(a: np.ndarray, b: np.ndarray, max_dim: Optional[int] = None) -> np.ndarray:
    """
    Kronecker product: block (i, j) of the result is a[i, j] * b.

    Raises:
        SizeLimitError: if dim(a) * dim(b) exceeds max_dim (default kron_max_dim).
    """
    max_dim = get_setting("kron_max_dim") if max_dim is None else max_dim
    dim = a.shape[0] * b.shape[0]
    if dim > max_dim:
        raise SizeLimitError(f"Kronecker product dimension {dim} exceeds cap {max_dim}")
    return _freeze(np.kron(a, b))


def re_part(a: np.ndarray) -> np.ndarray:
    """Hermitian real part (A + A*)/2."""
    return _freeze(symmetrize(a))


def im_part(a: np.ndarray) -> np.ndarray:
    """Hermitian imaginary part (A - A*)/(2i)."""
    return _freeze(symmetrize(-0.5j * (a - a.conj().T)))


def rotate(a: np.ndarray, theta: float) -> np.ndarray:
    """e^{i theta} A."""
    return _freeze(np.exp(1j * theta) * a)


def gram(a: np.ndarray) -> np.ndarray:
    """A*A, symmetrized."""
    return _freeze(symmetrize(a.conj().T @ a))


def cogram(a: np.ndarray) -> np.ndarray:
    """AA*, symmetrized."""
    return _freeze(symmetrize(a @ a.conj().T))


def operator_norm(a: np.ndarray) -> float:
    """Spectral norm: sqrt of the largest eigenvalue of A*A."""
    if not np.any(a):
        return 0.0
    top = solve_hermitian(gram(a)).eigenvalues[-1]
    return float(np.sqrt(max(top, 0.0)))


def hermitian_norm(h: np.ndarray) -> float:
    """Spectral norm of a Hermitian matrix: largest |eigenvalue|."""
    if not np.any(h):
        return 0.0
    values = solve_hermitian(h).eigenvalues
    return float(max(abs(values[0]), abs(values[-1])))


def psd_function(p: np.ndarray, func) -> np.ndarray:
    """
    Apply a scalar function to a PSD matrix through its eigendecomposition.

    Eigenvalues in [-eps, 0) with eps = 1e-12 * ||p||_F are clamped to 0.
    """
    eig = solve_hermitian(p)
    eps = PSD_CLAMP * max(np.linalg.norm(p), SCALE_FLOOR)
    values = np.where((eig.eigenvalues < 0) & (eig.eigenvalues >= -eps), 0.0, eig.eigenvalues)
    values = np.clip(values, 0.0, None)
    vecs = eig.eigenvectors
    return _freeze(symmetrize((vecs * func(values)) @ vecs.conj().T))


def abs_op(a: np.ndarray) -> np.ndarray:
    """|A| = (A*A)^{1/2}, Hermitian positive semidefinite."""
    return psd_function(gram(a), np.sqrt)


def psd_power(p: np.ndarray, r: float) -> np.ndarray:
    """P^r for PSD P and real r >= 0."""
    return psd_function(p, lambda values: np.power(values, r))


def ensure_psd(p: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """
    Validate that p is Hermitian PSD within tol (relative to max(1, ||p||)).

    Raises:
        NotPSDError: if p is not Hermitian or has an eigenvalue below -tol.
    """
    p = np.asarray(p, dtype=np.complex128)
    scale_ = max(1.0, frobenius_norm(p))
    if np.linalg.norm(p - p.conj().T) > tol * scale_:
        raise NotPSDError("Matrix is not Hermitian")
    smallest = solve_hermitian(symmetrize(p)).eigenvalues[0]
    if smallest < -tol * scale_:
        raise NotPSDError(f"Matrix has negative eigenvalue {smallest:.3e}")
    return _freeze(symmetrize(p))


def is_hermitian(a: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.linalg.norm(a - a.conj().T) <= tol * max(frobenius_norm(a), SCALE_FLOOR))


def is_normal(a: np.ndarray, tol: float = 1e-10) -> bool:
    """||A*A - AA*||_F <= tol * ||A||_F^2 (true for the zero matrix)."""
    commutator = a.conj().T @ a - a @ a.conj().T
    return bool(np.linalg.norm(commutator) <= tol * frobenius_norm(a) ** 2)


def is_square_zero(a: np.ndarray, tol: float = 1e-10) -> bool:
    """||A^2||_F <= tol * ||A||_F^2 (true for the zero matrix)."""
    return bool(np.linalg.norm(a @ a) <= tol * frobenius_norm(a) ** 2)
