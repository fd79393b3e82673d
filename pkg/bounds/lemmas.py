"""Standalone checks of the operator inequalities the tensor bounds are built on."""

import logging

import numpy as np

from linalg import NotUnitError, abs_op, adjoint, ensure_psd, hermitian_norm, operator_norm, psd_power

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-10
LEMMA_TOL = 1e-10
SUM_NORM_TOL = 1e-8


def _unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).ravel()
    norm = np.linalg.norm(x)
    if abs(norm - 1.0) > UNIT_TOL:
        raise NotUnitError(f"Expected a unit vector, got norm {norm:.12g}")
    return x


def _form(a: np.ndarray, x: np.ndarray) -> complex:
    """<a x, x>"""
    return complex(np.vdot(x, a @ x))


def check_power_lemma(a, x, r: float) -> bool:
    """
    <Ax, x>^r <= <A^r x, x> for PSD A, unit x and r >= 1.

    Raises:
        NotPSDError: if a is not Hermitian PSD.
        NotUnitError: if ||x|| != 1.
        ValueError: if r < 1.
    """
    if r < 1:
        raise ValueError(f"Exponent must be at least 1, got {r}")
    a = ensure_psd(a)
    x = _unit(x)
    lhs = max(_form(a, x).real, 0.0) ** r
    rhs = _form(psd_power(a, r), x).real
    return lhs <= rhs + LEMMA_TOL * max(1.0, abs(rhs))


def check_mixed_schwarz(a, x) -> bool:
    """
    |<Ax, x>| <= <|A|x, x>^{1/2} <|A*|x, x>^{1/2} for unit x.

    Raises:
        NotUnitError: if ||x|| != 1.
    """
    a = np.asarray(a, dtype=np.complex128)
    x = _unit(x)
    lhs = abs(_form(a, x))
    left = max(_form(abs_op(a), x).real, 0.0)
    right = max(_form(abs_op(adjoint(a)), x).real, 0.0)
    rhs = np.sqrt(left * right)
    return lhs <= rhs + LEMMA_TOL * max(1.0, rhs)


def check_sum_norm_lemma(a, b) -> bool:
    """
    ||A + B|| <= max{||A||, ||B||} + ||A^{1/2} B^{1/2}|| for PSD A, B.

    Raises:
        NotPSDError: if a or b is not Hermitian PSD.
    """
    a, b = ensure_psd(a), ensure_psd(b)
    norm_a, norm_b = hermitian_norm(a), hermitian_norm(b)
    lhs = hermitian_norm(a + b)
    rhs = max(norm_a, norm_b) + operator_norm(psd_power(a, 0.5) @ psd_power(b, 0.5))
    return lhs <= rhs + SUM_NORM_TOL * (norm_a + norm_b)
