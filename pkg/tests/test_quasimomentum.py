import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import delta
from periodic_jacobi import (
    Potential,
    kappa_on_real_axis,
    mo_data,
    random_potential,
    slit_data,
    spectral_data,
    verify_estimates,
)

WORKED = Potential([0.0, 0.0], [1.0, -1.0])
SPLIT = Potential([0.3, -0.3], [0.0, 0.0])
ARCOSH_1_5 = 0.9624236501192069


def samples(p, k=16):
    ks = kappa_on_real_axis(p, points_per_band=k)
    lam = np.array([s.lam for s in ks])
    kappa = np.array([s.re_kappa + 1j * s.im_kappa for s in ks])
    return ks, lam, kappa


def test_zero_potential_period_two():
    ks, lam, kappa = samples(Potential.zero(2), 3)
    np.testing.assert_allclose(lam, [-2, -1, 0, 0, 1, 2], atol=1e-14)
    np.testing.assert_allclose(kappa.real[[0, 2, 5]], [0.0, np.pi, 2 * np.pi], atol=1e-12)
    assert np.all(kappa.imag == 0.0)


def test_worked_gap_boundary_values():
    ks, lam, kappa = samples(WORKED, 3)
    mid = [s for s in ks if s.region == "gap" and s.lam == 0.0]
    assert sorted(s.im_kappa for s in mid) == pytest.approx([-ARCOSH_1_5, ARCOSH_1_5], abs=1e-12)
    assert all(s.re_kappa == np.pi for s in mid)


@pytest.mark.parametrize("p", [WORKED, SPLIT, random_potential(6, 1.0, 3), random_potential(9, 0.5, 4)])
def test_band_images_end_at_multiples_of_pi(p):
    ks, lam, kappa = samples(p)
    assert kappa.real[0] == pytest.approx(0.0, abs=1e-9)
    assert kappa.real[-1] == pytest.approx(p.N * np.pi, abs=1e-9)
    for n in range(1, p.N + 1):
        band = np.array([s.re_kappa for s in ks if s.region == "band" and s.index == n])
        assert band[0] == pytest.approx((n - 1) * np.pi, abs=1e-9)
        assert band[-1] == pytest.approx(n * np.pi, abs=1e-9)
        assert np.all(np.diff(band) > 0)


@given(st.integers(2, 10), st.integers(0, 100_000))
def test_defining_relation(N, seed):
    p = random_potential(N, 0.5, seed)
    ks, lam, kappa = samples(p, 8)
    reference = (-1) ** N * np.array([delta(p.x, p.b, v) for v in lam])
    assert np.max(np.abs(np.cos(kappa) - reference)) <= 1e-9


@given(st.integers(2, 10), st.integers(0, 100_000))
def test_gap_samples_lie_on_slits(N, seed):
    p = random_potential(N, 0.5, seed)
    heights = mo_data(p).height
    for s in kappa_on_real_axis(p, points_per_band=6):
        if s.region == "gap":
            assert s.re_kappa == pytest.approx(s.index * np.pi, abs=1e-9)
            assert abs(s.im_kappa) <= heights[s.index - 1] + 1e-9


def test_slit_examples():
    assert [s.height for s in slit_data(Potential.zero(4))] == [0.0, 0.0, 0.0]
    (slit,) = slit_data(WORKED)
    assert slit.center == np.pi
    assert slit.height == pytest.approx(0.9624236501, abs=1e-10)
    (slit,) = slit_data(SPLIT)
    assert slit.nu_height == pytest.approx(0.6, abs=1e-12)
    assert slit.psi1 == pytest.approx(0.6, abs=1e-12)


@given(st.integers(2, 10), st.integers(0, 100_000))
def test_slit_heights_two_ways(N, seed):
    p = random_potential(N, 0.5, seed)
    sd = spectral_data(p)
    md = mo_data(p, sd)
    for s in slit_data(p, sd):
        assert s.height_residual <= 1e-8 and s.nu_residual <= 1e-8
        # complex arccos of the transfer-matrix discriminant at the critical point
        kappa = np.arccos((-1) ** N * delta(p.x, p.b, sd.crit[s.index - 1]) + 0j)
        assert abs(kappa.imag) == pytest.approx(md.height[s.index - 1], abs=1e-8)


def test_points_per_band_minimum():
    with pytest.raises(ValueError):
        kappa_on_real_axis(WORKED, points_per_band=1)


def test_estimates_zero_potential():
    r = verify_estimates(Potential.zero(2))
    np.testing.assert_allclose(r.chain, [0.25, 4.0, 4.0, 32.0, 32.0], atol=1e-12)
    assert r.holds and r.equalities == [1, 3]


def test_estimates_worked():
    r = verify_estimates(WORKED)
    expected = [0.25 * np.exp(2 * ARCOSH_1_5), 5.0, 6.0, 40.0, 16 * 2 * np.exp(2 * ARCOSH_1_5)]
    np.testing.assert_allclose(r.chain, expected, rtol=1e-12)
    assert r.rhs2 == pytest.approx(219.0, abs=0.5)
    assert r.holds and r.equalities == []


def test_estimates_random_example():
    r = verify_estimates(random_potential(6, 1.0, 30))
    assert r.holds, f"chain {r.chain}, margins {r.margins}"


@given(st.integers(2, 10), st.integers(0, 100_000))
def test_estimates_inner_comparisons(N, seed):
    # the middle two comparisons involve no slit heights
    r = verify_estimates(random_potential(N, 0.5, seed))
    assert r.margins[1] >= -1e-9 and r.margins[2] >= -1e-9
