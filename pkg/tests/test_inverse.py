import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodic_jacobi import (
    DimensionMismatch,
    HomotopyStalled,
    InverseOptions,
    PeriodTooSmall,
    Potential,
    mo_map,
    project,
    random_potential,
    roundtrip_check,
    solve_inverse,
)
from periodic_jacobi.inverse import _newton_leg

ARCOSH_1_5 = 0.9624236501192069


@pytest.mark.parametrize("N", [2, 3, 7])
def test_zero_target(N):
    r = solve_inverse(np.zeros(2 * N - 2), N)
    assert r.q == Potential.zero(N)
    assert r.newton_iterations == 0 and r.residual == 0.0


def test_split_target():
    r = solve_inverse([0.6, 0.0], 2)
    np.testing.assert_allclose(r.q.x, [0.3, -0.3], atol=1e-9)
    np.testing.assert_allclose(r.q.b, [0.0, 0.0], atol=1e-9)


def test_worked_target():
    r = solve_inverse([0.0, -ARCOSH_1_5], 2)
    np.testing.assert_allclose(r.q.x, [0.0, 0.0], atol=1e-7)
    np.testing.assert_allclose(r.q.b, [1.0, -1.0], atol=1e-7)


@pytest.mark.parametrize(
    "p, bound",
    [
        (Potential.zero(4), 1e-12),
        (random_potential(6, 0.5, 21), 1e-8),
        (random_potential(10, 1.0, 22), 1e-7),
    ],
)
def test_roundtrip_examples(p, bound):
    assert roundtrip_check(p) <= bound


def test_bad_inputs():
    with pytest.raises(DimensionMismatch):
        solve_inverse(np.zeros(3), 2)
    with pytest.raises(PeriodTooSmall):
        solve_inverse(np.zeros(0), 1)
    with pytest.raises(ValueError):
        InverseOptions(tol=0.0)


def test_path_is_monotone_and_converged():
    target = np.array([0.8, -1.1, 0.4, 1.5])
    opts = InverseOptions()
    r = solve_inverse(target, 3, opts)
    s = [step[0] for step in r.homotopy_path]
    assert s[0] == 0.0 and s[-1] == 1.0 and np.all(np.diff(s) > 0)
    assert all(res <= opts.tol for _, res in r.homotopy_path[1:])
    assert np.max(np.abs(mo_map(r.q) - target)) <= 1e-9


def test_stall_carries_path():
    opts = InverseOptions(max_newton=1, homotopy_steps=1, max_homotopy_steps=2)
    with pytest.raises(HomotopyStalled) as info:
        solve_inverse([1.9, -1.9, 1.9, 1.9, -1.9, 1.9], 4, opts)
    assert info.value.path and info.value.path[0] == (0.0, 1.9)
    assert 0.0 <= info.value.s < 1.0


def test_final_leg_is_unique():
    target = np.array([0.5, 0.3, -0.7, 1.2, 0.1, -0.4])
    r = solve_inverse(target, 4)
    opts = InverseOptions()
    rng = np.random.default_rng(3)
    for _ in range(2):
        start = project(r.q) + 1e-3 * rng.standard_normal(6)
        u, _ = _newton_leg(start, 4, target, opts, [0])
        np.testing.assert_allclose(u, project(r.q), atol=1e-8)


@settings(max_examples=15)
@given(st.integers(2, 6), st.integers(0, 10_000))
def test_random_targets(N, seed):
    target = np.random.default_rng(seed).uniform(-2, 2, 2 * N - 2)
    r = solve_inverse(target, N)
    assert np.max(np.abs(mo_map(r.q) - target)) <= 1e-9
