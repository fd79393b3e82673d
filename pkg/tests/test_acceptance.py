"""Full-size acceptance sweeps. Run with: pytest -m slow"""

import itertools

import numpy as np
import pytest

from bounds import BoundId, OperatorPair, check_equality_half, eval_all, eval_bound
from cli import VerifyConfig, run_trials, summarize
from generators import Ensemble, GeneratorConfig, generate, trial_seeds
from linalg import as_matrix, identity, kron, operator_norm
from numrange import numerical_radius, radius_grid_oracle
from scalar_distance import disk_grid, distance_to_scalars, gap_value

pytestmark = pytest.mark.slow


def _pairs(ens_a, ens_b, count, master=42):
    for i in range(count):
        seed_a, seed_b = trial_seeds(master, i)
        dim_a, dim_b = 2 + i % 3, 2 + (i // 3) % 3
        yield (generate(ens_a, GeneratorConfig(seed_a, dim_a)),
               generate(ens_b, GeneratorConfig(seed_b, dim_b)))


def test_soundness_sweep():
    ensembles = [e.value for e in Ensemble]
    cfg = VerifyConfig(trials=500, dims=[2, 3, 4, 5, 6], master_seed=42, quiet=True,
                       ensembles=list(itertools.product(ensembles, ensembles)))
    records = run_trials(cfg)
    summary = summarize(records)
    assert summary["bound_reports"] == 5500
    assert summary["errored_trials"] == 0
    assert summary["violations"] == 0


def test_half_norm_equality_case():
    for a, b in _pairs(Ensemble.SQUARE_ZERO, Ensemble.NORMAL, 100):
        product = operator_norm(a) * operator_norm(b)
        assert abs(numerical_radius(kron(a, b)).value - 0.5 * product) <= 1e-6 * product


def test_normal_pairs_attain_norm_product():
    for a, b in _pairs(Ensemble.NORMAL, Ensemble.NORMAL, 100):
        product = operator_norm(a) * operator_norm(b)
        assert numerical_radius(kron(a, b)).value == pytest.approx(product, rel=1e-6)


def test_one_normal_factor_gives_radius_product():
    for a, b in _pairs(Ensemble.NORMAL, Ensemble.GINIBRE, 100):
        expected = numerical_radius(a).value * numerical_radius(b).value
        assert numerical_radius(kron(a, b)).value == pytest.approx(expected, rel=1e-6)


def test_square_zero_pairs_double_radius_product():
    for a, b in _pairs(Ensemble.SQUARE_ZERO, Ensemble.SQUARE_ZERO, 100):
        expected = 2.0 * numerical_radius(a).value * numerical_radius(b).value
        assert numerical_radius(kron(a, b)).value == pytest.approx(expected, rel=1e-6)


def test_canonical_jordan_pair(N):
    p = OperatorPair.build(N, N)
    assert numerical_radius(N).value == pytest.approx(0.5, abs=1e-8)
    assert distance_to_scalars(N).value == pytest.approx(0.5, abs=1e-8)
    assert numerical_radius(kron(N, N)).value == pytest.approx(0.5, abs=1e-8)
    abs_upper = eval_bound(BoundId.ABS_UPPER, p)
    assert abs_upper.term("abs_term") == pytest.approx(0.25, abs=1e-8)
    assert abs_upper.center == pytest.approx(0.25, abs=1e-8)
    normdiff = eval_bound(BoundId.NORMDIFF_LOWER, p)
    assert normdiff.term("normdiff") == pytest.approx(0.5, abs=1e-8)
    assert normdiff.min_slack == pytest.approx(0.0, abs=1e-8)
    half = check_equality_half(p, grid=360)
    assert half.consistent
    assert max(half.max_deviation_plus, half.max_deviation_minus) < 1e-9


def test_canonical_projection_pair(D):
    res = distance_to_scalars(D)
    assert res.value == pytest.approx(0.5, abs=1e-6)
    assert res.lambda_star == pytest.approx(0.5, abs=1e-6)
    gap = eval_bound(BoundId.CRAWFORD_GAP, OperatorPair.build(D, D))
    assert gap.center == pytest.approx(0.0, abs=1e-8)
    assert gap_value(kron(D, D), 0.5) == pytest.approx(0.25, abs=1e-8)
    assert gap.holds


def test_radius_matches_grid_oracle(rng):
    m = 10 ** 4
    for k in range(200):
        n = 1 + k % 8
        a = as_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        w = numerical_radius(a).value
        oracle = radius_grid_oracle(a, m)
        assert abs(w - oracle) <= operator_norm(a) * np.pi / m + 1e-8


def test_distance_matches_grid_oracle(rng):
    n_grid = 31
    for k in range(8):
        n = 2 + k % 3
        a = as_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        res = distance_to_scalars(a)
        center = complex(np.trace(a)) / n
        lams = disk_grid(center, res.box_radius, n_grid)
        oracle = min(numerical_radius(as_matrix(a - lam * np.eye(n))).value for lam in lams)
        # w(a - lambda I) is 1-Lipschitz in lambda
        spacing = 2.0 * res.box_radius / (n_grid - 1)
        assert res.value <= oracle + 1e-4
        assert oracle - res.value <= spacing / np.sqrt(2.0) + 1e-6


def test_invariances(rng):
    for _ in range(100):
        n = int(rng.integers(2, 5))
        a = as_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        b = as_matrix(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        w = numerical_radius(a).value
        c = complex(rng.standard_normal(), rng.standard_normal())
        assert numerical_radius(as_matrix(c * a)).value == pytest.approx(abs(c) * w, rel=1e-6)
        q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        assert numerical_radius(as_matrix(q @ a @ q.conj().T)).value == pytest.approx(w, rel=1e-6)
        assert numerical_radius(kron(a, b)).value == pytest.approx(numerical_radius(kron(b, a)).value, rel=1e-6)


def test_distance_shift_invariance(rng):
    for _ in range(100):
        n = int(rng.integers(2, 4))
        a = as_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        mu = complex(rng.standard_normal(), rng.standard_normal())
        base = distance_to_scalars(a).value
        assert distance_to_scalars(as_matrix(a - mu * identity(n))).value == pytest.approx(base, rel=1e-6)


def test_zero_pair_collapses():
    summary = eval_all(OperatorPair.build(np.zeros((3, 3)), np.zeros((2, 2))))
    assert summary.all_hold
