"""
Seeded ensembles of test operators, one per structural class the equality
cases of the tensor bounds name (square-zero, normal, self-adjoint, ...).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from linalg import DimensionTooSmallError, as_matrix
from .streams import MASK64, ComplexGaussianStream

logger = logging.getLogger(__name__)


class Ensemble(str, Enum):
    GINIBRE = "GINIBRE"
    NORMAL = "NORMAL"
    SELFADJOINT = "SELFADJOINT"
    UNITARY = "UNITARY"
    SQUARE_ZERO = "SQUARE_ZERO"


@dataclass(frozen=True)
class EnsembleSpec:
    """An ensemble, optionally scaled: written 'NORMAL' or 'NORMAL*2.5'."""

    base: Ensemble
    factor: float = 1.0

    @property
    def is_scaled(self) -> bool:
        return self.factor != 1.0

    @property
    def name(self) -> str:
        return f"{self.base.value}*{self.factor:g}" if self.is_scaled else self.base.value

    @classmethod
    def parse(cls, text: Union[str, Ensemble, "EnsembleSpec"]) -> "EnsembleSpec":
        if isinstance(text, EnsembleSpec):
            return text
        if isinstance(text, Ensemble):
            return cls(text)
        base, _, factor = str(text).strip().partition("*")
        try:
            ensemble = Ensemble(base.strip().upper())
        except ValueError:
            raise ValueError(f"Unknown ensemble: {base}. Supported: {[e.value for e in Ensemble]}")
        if not factor:
            return cls(ensemble)
        value = float(factor)
        if not math.isfinite(value):
            raise ValueError(f"Scale factor must be finite, got {factor}")
        return cls(ensemble, value)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    dim: int

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.dim < 1:
            raise DimensionTooSmallError(f"Dimension must be at least 1, got {self.dim}")


def gram_schmidt(g: np.ndarray) -> np.ndarray:
    """Orthonormalize the columns of g (modified Gram-Schmidt, two passes)."""
    q = np.array(g, dtype=np.complex128)
    n = q.shape[1]
    for j in range(n):
        for _ in range(2):
            for k in range(j):
                q[:, j] -= np.vdot(q[:, k], q[:, j]) * q[:, k]
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def _ginibre(stream: ComplexGaussianStream, n: int) -> np.ndarray:
    return stream.matrix(n, n)


def _unitary(stream: ComplexGaussianStream, n: int) -> np.ndarray:
    return gram_schmidt(stream.matrix(n, n))


def _normal(stream: ComplexGaussianStream, n: int) -> np.ndarray:
    u = _unitary(stream, n)
    return (u * stream.gaussians(n)) @ u.conj().T


def _selfadjoint(stream: ComplexGaussianStream, n: int) -> np.ndarray:
    g = stream.matrix(n, n)
    return 0.5 * (g + g.conj().T)


def _square_zero(stream: ComplexGaussianStream, n: int) -> np.ndarray:
    if n < 2:
        raise DimensionTooSmallError(f"SQUARE_ZERO needs dimension at least 2, got {n}")
    top = (n + 1) // 2
    a = np.zeros((n, n), dtype=np.complex128)
    a[:top, top:] = stream.matrix(top, n - top)
    return a


SUPPORTED_ENSEMBLES = {
    Ensemble.GINIBRE: _ginibre,
    Ensemble.NORMAL: _normal,
    Ensemble.SELFADJOINT: _selfadjoint,
    Ensemble.UNITARY: _unitary,
    Ensemble.SQUARE_ZERO: _square_zero,
}


def generate(e: Union[str, Ensemble, EnsembleSpec], cfg: GeneratorConfig) -> np.ndarray:
    """
    Draw one matrix of the ensemble; identical (ensemble, cfg) gives identical bits.

    Raises:
        DimensionTooSmallError: for SQUARE_ZERO with dim < 2.
    """
    ens = EnsembleSpec.parse(e)
    stream = ComplexGaussianStream(cfg.seed)
    a = SUPPORTED_ENSEMBLES[ens.base](stream, cfg.dim)
    if ens.is_scaled:
        a = ens.factor * a
    logger.debug(f"Generated {ens.name} matrix of dim {cfg.dim} from seed {cfg.seed}")
    return as_matrix(a)
