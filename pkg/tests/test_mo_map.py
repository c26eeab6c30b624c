import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import delta, mp_tables
from periodic_jacobi import (
    DimensionMismatch,
    Potential,
    mo_data,
    mo_map,
    norming_constant,
    pack,
    random_potential,
    slit_height,
    spectral_data,
    unpack,
)
from periodic_jacobi.spectrum import gap_signs

WORKED = Potential([0.0, 0.0], [1.0, -1.0])
SPLIT = Potential([0.3, -0.3], [0.0, 0.0])
ARCOSH_1_5 = 0.9624236501192069


@given(st.floats(-2, 2), st.floats(-3, 3))
def test_period_two_norming_constant(x1, beta):
    p = Potential([x1, -x1], [beta, -beta])
    nu = spectral_data(p).nu[0]
    assert norming_constant(p, nu, 1) == pytest.approx(2 * x1, abs=1e-12)


def test_norming_constant_examples():
    assert norming_constant(SPLIT, 0.0, 1) == pytest.approx(0.6, abs=1e-15)
    assert norming_constant(WORKED, 1.0, 1) == pytest.approx(0.0, abs=1e-15)


def test_slit_height_examples():
    assert slit_height(WORKED, 0.0, 1) == pytest.approx(ARCOSH_1_5, abs=1e-15)
    assert slit_height(SPLIT, 0.0, 1) == pytest.approx(0.6, abs=1e-12)
    assert slit_height(Potential.zero(2), 0.0, 1, closed=True) == 0.0


def test_gap_index_range():
    with pytest.raises(IndexError):
        slit_height(WORKED, 0.0, 2)
    with pytest.raises(IndexError):
        norming_constant(WORKED, 1.0, 0)


@pytest.mark.parametrize(
    "p, psi",
    [
        (WORKED, [0.0, -ARCOSH_1_5]),
        (SPLIT, [0.6, 0.0]),
    ],
)
def test_mo_map_examples(p, psi):
    np.testing.assert_allclose(mo_map(p), psi, atol=1e-12)


@pytest.mark.parametrize("N", range(2, 9))
def test_zero_potential_maps_to_zero(N):
    psi = mo_map(Potential.zero(N))
    assert np.all(psi == 0.0) and not np.any(np.signbit(psi))


@given(st.integers(2, 10), st.integers(0, 100_000))
def test_mo_invariants(N, seed):
    p = random_potential(N, 0.5, seed)
    sd = spectral_data(p)
    md = mo_data(p, sd)
    s = gap_signs(N)
    dnu = np.array([delta(p.x, p.b, v) for v in sd.nu])
    assert np.all(np.abs(np.cosh(md.psi1) - s * dnu) <= 1e-8)
    assert np.all(np.abs(md.psi1**2 + md.psi2**2 - md.xi) <= 1e-10 * (1 + md.xi))
    assert np.all(np.abs(md.psi1) <= md.height + 1e-10)
    nonzero = md.psi2 != 0
    assert np.all(np.sign(md.psi2[nonzero]) == np.sign(sd.crit - sd.nu)[nonzero])


def test_pack_unpack():
    psi1, psi2 = np.array([1.0, 2.0, 3.0]), np.array([-1.0, -2.0, -3.0])
    psi = pack(psi1, psi2)
    np.testing.assert_array_equal(psi, [1.0, -1.0, 2.0, -2.0, 3.0, -3.0])
    u1, u2 = unpack(psi)
    np.testing.assert_array_equal(u1, psi1)
    np.testing.assert_array_equal(u2, psi2)
    with pytest.raises(DimensionMismatch):
        unpack(np.zeros(3))


def test_deep_gap_norming_constant_against_mpmath():
    # phi_{N+1}(nu) ~ e^{-13}: forward recursion alone loses about four digits here
    p = random_potential(12, 1.0, 98)
    sd = spectral_data(p)
    psi1 = mo_data(p, sd).psi1
    s = gap_signs(p.N)
    with mp.workdps(50):
        for n in (1, 11):
            nu = mp.findroot(lambda t: mp_tables(p.x, p.b, t, 50)[0][p.N], mp.mpf(sd.nu[n - 1]))
            ref = mp.log(s[n - 1] * mp_tables(p.x, p.b, nu, 50)[0][p.N + 1])
            assert psi1[n - 1] == pytest.approx(float(ref), abs=1e-9)
