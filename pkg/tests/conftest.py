"""
Global pytest fixtures and configuration.
"""

import json
import logging
import sys
from pathlib import Path

import numpy as np
import pytest

# Make the flat top-level packages importable when pytest runs from anywhere
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import reset_app_config, update_app_config
from linalg import as_matrix, save_matrix


@pytest.fixture(autouse=True)
def fresh_config(tmp_path):
    """Every test starts from the default configuration, logging under tmp_path."""
    reset_app_config()
    update_app_config({"log_dir": str(tmp_path / "logs")})
    yield
    reset_app_config()


@pytest.fixture(autouse=True)
def restore_logging():
    """Commands reconfigure root logging; put the handlers back afterwards."""
    root = logging.getLogger()
    saved, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in saved:
            handler.close()
    root.handlers[:] = saved
    root.setLevel(level)


@pytest.fixture
def N():
    """Nilpotent Jordan block [[0,1],[0,0]]: W(N) is the disk of radius 1/2."""
    return as_matrix([[0, 1], [0, 0]])


@pytest.fixture
def D():
    """Projection diag(0,1): W(D) is the segment [0,1]."""
    return as_matrix(np.diag([0.0, 1.0]))


@pytest.fixture
def I2():
    return as_matrix(np.eye(2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_matrix(rng):
    """Factory for random complex Gaussian matrices."""

    def make(n):
        return as_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))

    return make


@pytest.fixture
def random_psd(rng):
    """Factory for random positive semidefinite matrices G G*."""

    def make(n, rank=None):
        g = rng.standard_normal((n, rank or n)) + 1j * rng.standard_normal((n, rank or n))
        return as_matrix(g @ g.conj().T)

    return make


@pytest.fixture
def matrix_file(tmp_path):
    """Write a matrix to a Matrix JSON file and return its path."""

    def write(a, name="matrix.json"):
        path = tmp_path / name
        save_matrix(path, as_matrix(a))
        return str(path)

    return write


@pytest.fixture
def raw_file(tmp_path):
    """Write raw text (e.g. malformed JSON) and return its path."""

    def write(text, name="raw.json"):
        path = tmp_path / name
        path.write_text(text if isinstance(text, str) else json.dumps(text))
        return str(path)

    return write
