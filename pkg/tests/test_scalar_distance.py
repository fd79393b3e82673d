import numpy as np
import pytest
from numpy.testing import assert_allclose

from config import update_app_config
from linalg import BudgetExceededError, InvalidToleranceError, as_matrix, identity, kron, operator_norm
from numrange import numerical_radius
from scalar_distance import (
    crawford_gap_rhs,
    disk_grid,
    distance_to_scalars,
    gap_value,
    pick_minimum,
    shifted_norms,
)


@pytest.mark.unit
def test_disk_grid_keeps_points_inside():
    pts = disk_grid(0j, 1.0, 3)
    assert sorted(map(complex, pts), key=lambda z: (z.real, z.imag)) == [-1, -1j, 0, 1j, 1]
    shifted = disk_grid(2 + 1j, 0.5, 33)
    assert np.all(np.abs(shifted - (2 + 1j)) <= 0.5 + 1e-12)


@pytest.mark.unit
def test_pick_minimum_tie_breaks():
    lams = np.array([1.0, -1.0, 1j, 0.5], dtype=complex)
    assert pick_minimum(lams, np.array([0.0, 0.0, 0.0, 1.0]), atol=0.0) == 0
    assert pick_minimum(lams[1:3], np.array([2.0, 2.0]), atol=0.0) == 1
    assert pick_minimum(lams, np.array([3.0, 3.0, 3.0, 3.0]), atol=0.0) == 3


@pytest.mark.unit
def test_distance_of_identity():
    res = distance_to_scalars(identity(3))
    assert res.value == pytest.approx(0.0, abs=1e-9)
    assert res.lambda_star == pytest.approx(1.0, abs=1e-6)
    assert res.box_radius == pytest.approx(2.0)


@pytest.mark.unit
def test_distance_of_projection(D):
    res = distance_to_scalars(D)
    assert res.value == pytest.approx(0.5, abs=1e-8)
    assert res.lambda_star == pytest.approx(0.5, abs=1e-4)


@pytest.mark.unit
def test_distance_of_jordan_block(N):
    res = distance_to_scalars(N)
    assert res.value == pytest.approx(0.5, abs=1e-8)
    assert abs(res.lambda_star) == pytest.approx(0.0, abs=1e-4)
    assert res.box_radius == pytest.approx(1.0)


@pytest.mark.unit
def test_distance_of_hermitian_is_half_spread():
    a = as_matrix(np.diag([-1.0, 3.0, 2.0]))
    res = distance_to_scalars(a)
    assert res.value == pytest.approx(2.0, abs=1e-4)
    assert res.lambda_star == pytest.approx(1.0, abs=5e-2)


@pytest.mark.unit
def test_distance_of_zero_matrix():
    res = distance_to_scalars(as_matrix(np.zeros((2, 2))))
    assert res.value == 0.0
    assert res.lambda_star == 0j
    assert res.iterations == 0


@pytest.mark.unit
def test_distance_rejects_bad_tolerance(N):
    with pytest.raises(InvalidToleranceError):
        distance_to_scalars(N, tol=0.0)


@pytest.mark.property
def test_distance_is_shift_invariant_and_homogeneous(random_matrix):
    a = random_matrix(3)
    base = distance_to_scalars(a)
    w = numerical_radius(a).value
    assert 0.0 <= base.value <= w + 1e-9
    assert base.value == pytest.approx(numerical_radius(a - base.lambda_star * identity(3)).value, abs=1e-9)

    mu = 0.7 - 1.3j
    shifted = distance_to_scalars(as_matrix(a + mu * np.eye(3)))
    assert shifted.value == pytest.approx(base.value, rel=1e-4, abs=1e-6)
    doubled = distance_to_scalars(as_matrix(2 * a))
    assert doubled.value == pytest.approx(2 * base.value, rel=1e-4, abs=1e-6)


@pytest.mark.unit
def test_distance_budget_exhaustion(random_matrix):
    update_app_config({"dist_budget": 10})
    with pytest.raises(BudgetExceededError):
        distance_to_scalars(random_matrix(4))


@pytest.mark.unit
def test_shifted_norms(D):
    assert_allclose(shifted_norms(D, [0, 0.5, 2j]), [1.0, 0.5, np.sqrt(5.0)], atol=1e-12)


@pytest.mark.unit
def test_gap_value_examples(N, D):
    assert gap_value(kron(N, N), 0) == pytest.approx(1.0, abs=1e-9)
    assert gap_value(kron(D, D), 0.5) == pytest.approx(0.25, abs=1e-9)
    assert gap_value(identity(4), 1.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.unit
def test_crawford_gap_of_projection_product(D):
    res = crawford_gap_rhs(kron(D, D))
    assert res.best_value == pytest.approx(0.25, abs=1e-9)
    assert res.lambda_star.real == pytest.approx(0.5, abs=1e-3)
    assert res.evaluations == len(res.grid_values)
    assert res.grid_values[-1][0] == res.lambda_star


@pytest.mark.unit
def test_crawford_gap_of_jordan_product(N):
    t = kron(N, N)
    res = crawford_gap_rhs(t, n_grid=9)
    w_t = numerical_radius(t).value
    assert 1.0 - w_t ** 2 - 1e-6 <= res.best_value <= 1.0 + 1e-9


@pytest.mark.unit
def test_crawford_gap_rejects_small_grid(N):
    with pytest.raises(ValueError):
        crawford_gap_rhs(kron(N, N), n_grid=8)
    with pytest.raises(ValueError):
        crawford_gap_rhs(kron(N, N), n_grid=0)


@pytest.mark.property
def test_shifted_radius_is_convex(rng, random_matrix):
    a = random_matrix(3)

    def g(lam):
        return numerical_radius(as_matrix(a - lam * np.eye(3))).value

    for _ in range(5):
        l1, l2 = (rng.standard_normal(2) @ [1, 1j] for _ in range(2))
        s = rng.random()
        assert g(s * l1 + (1 - s) * l2) <= s * g(l1) + (1 - s) * g(l2) + 1e-8


@pytest.mark.property
@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
def test_crawford_gap_values_dominate_norm_defect(random_matrix, m, n):
    t = kron(random_matrix(m), random_matrix(n))
    norm = operator_norm(t)
    defect = norm ** 2 - numerical_radius(t).value ** 2
    res = crawford_gap_rhs(t, n_grid=9)
    assert res.grid_values
    for lam, h in res.grid_values:
        assert h >= defect - 1e-6 * (1 + norm ** 2), lam
