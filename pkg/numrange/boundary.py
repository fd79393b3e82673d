"""Sampling the boundary of the numerical range through its support lines."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from config import get_setting
from .support import family_top_eigh, uniform_thetas

logger = logging.getLogger(__name__)

BOUNDARY_COLUMNS = ["theta", "re", "im", "support_value"]
FLOAT_FORMAT = "%.12g"


@dataclass(frozen=True)
class RangeSample:
    theta: float
    boundary_point: complex
    support_value: float


def range_boundary(a: np.ndarray, n_points: int = None) -> List[RangeSample]:
    """
    Boundary points of W(a), one per support direction.

    For theta_k = 2*pi*k/n_points the top eigenvector x of Re(e^{i theta_k} a)
    gives the boundary point <a x, x> on the support line with value lambda_max.

    Raises:
        ValueError: if n_points < 3.
    """
    n_points = get_setting("boundary_points") if n_points is None else n_points
    if n_points < 3:
        raise ValueError(f"Boundary sampling needs at least 3 points, got {n_points}")
    thetas = uniform_thetas(n_points)
    support, vectors = family_top_eigh(a, thetas)
    # <a x, x> = x^H a x for each row x
    points = np.einsum("ki,ij,kj->k", vectors.conj(), a, vectors)
    return [
        RangeSample(theta=float(t), boundary_point=complex(p), support_value=float(s))
        for t, p, s in zip(thetas, points, support)
    ]


def boundary_frame(samples: List[RangeSample]) -> pd.DataFrame:
    return pd.DataFrame(
        [[s.theta, s.boundary_point.real, s.boundary_point.imag, s.support_value] for s in samples],
        columns=BOUNDARY_COLUMNS,
    )


def write_boundary_csv(samples: List[RangeSample], path: Union[str, Path]) -> Path:
    path = Path(path)
    boundary_frame(samples).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {len(samples)} boundary samples to {path}")
    return path
