"""
Matrix JSON format shared across the toolkit:

    {"dim": n, "re": [[...n x n reals...]], "im": [[...n x n reals...]]}

``im`` may be omitted for real matrices.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from .core import as_matrix
from .errors import MatrixParseError

logger = logging.getLogger(__name__)


def _real_grid(doc: Dict[str, Any], key: str, dim: int) -> np.ndarray:
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixParseError(f"'{key}' must be a list of {dim} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixParseError(f"'{key}' row {i} must have {dim} entries")
        for value in row:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise MatrixParseError(f"'{key}' row {i} has non-numeric entry {value!r}")
            if not math.isfinite(value):
                raise MatrixParseError(f"'{key}' row {i} has non-finite entry {value!r}")
    return np.array(rows, dtype=float)


def parse_matrix(doc: Dict[str, Any]) -> np.ndarray:
    """
    Build a ComplexMatrix from a decoded Matrix JSON document.

    Raises:
        MatrixParseError: on missing keys, mismatched dims, non-square or non-finite data.
    """
    if not isinstance(doc, dict):
        raise MatrixParseError("Matrix document must be a JSON object")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MatrixParseError(f"'dim' must be a positive integer, got {dim!r}")
    re = _real_grid(doc, "re", dim)
    im = _real_grid(doc, "im", dim) if "im" in doc else np.zeros((dim, dim))
    return as_matrix(re + 1j * im)


def matrix_to_doc(a: np.ndarray) -> Dict[str, Any]:
    return {"dim": int(a.shape[0]), "re": np.real(a).tolist(), "im": np.imag(a).tolist()}


def load_matrix(path: Union[str, Path]) -> np.ndarray:
    """Read a Matrix JSON file. OSError propagates; content problems raise MatrixParseError."""
    with open(path, "r") as f:
        try:
            doc = json.load(f, parse_constant=lambda name: float(name))
        except json.JSONDecodeError as e:
            raise MatrixParseError(f"Invalid JSON in {path}: {e}") from e
    a = parse_matrix(doc)
    logger.debug(f"Loaded {a.shape[0]}x{a.shape[0]} matrix from {path}")
    return a


def save_matrix(path: Union[str, Path], a: np.ndarray):
    with open(path, "w") as f:
        json.dump(matrix_to_doc(a), f, indent=2)
