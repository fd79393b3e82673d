"""
Reproducible random streams.

Child seeds come from the SplitMix64 finalizer applied to
``master + (index + 1) * 0x9E3779B97F4A7C15 (mod 2^64)``. For a fixed master
the map index -> child is a bijection on 64-bit integers, so distinct trials
never share a stream.

Each stream is numpy's Philox4x64-10 counter-based generator keyed by the
seed. Raw 64-bit words become uniforms in (0, 1] as ``((word >> 11) + 1) * 2^-53``,
and pairs of uniforms become standard complex Gaussians by Box-Muller:

    z = sqrt(-log(u1)) * exp(2i*pi*u2)      (E|z|^2 = 1)

None of this depends on the platform's default generator.
"""

import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finalizer (a bijection on 64-bit integers)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def split_stream(master_seed: int, trial_index: int) -> int:
    """Child seed for one trial of a master stream."""
    if not 0 <= master_seed <= MASK64:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {master_seed}")
    if trial_index < 0:
        raise ValueError(f"Trial index must be non-negative, got {trial_index}")
    return mix64(master_seed + (trial_index + 1) * GOLDEN_GAMMA)


def trial_seeds(master_seed: int, trial_index: int) -> Tuple[int, int]:
    """Seeds for operands A and B of one trial."""
    trial_seed = split_stream(master_seed, trial_index)
    return split_stream(trial_seed, 0), split_stream(trial_seed, 1)


class ComplexGaussianStream:
    """Sequential standard complex Gaussians from a Philox stream keyed by seed."""

    def __init__(self, seed: int):
        self.seed = seed
        self._bits = np.random.Philox(key=seed)

    def uniforms(self, count: int) -> np.ndarray:
        raw = np.asarray(self._bits.random_raw(count), dtype=np.uint64)
        return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0 ** -53

    def gaussians(self, count: int) -> np.ndarray:
        u = self.uniforms(2 * count)
        u1, u2 = u[0::2], u[1::2]
        return np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)

    def matrix(self, rows: int, cols: int) -> np.ndarray:
        return self.gaussians(rows * cols).reshape(rows, cols)
