"""Marchenko-Ostrovsky data: norming constants and slit heights per gap.

For gap ``n`` with sign ``s = (-1)^(N-n)``::

    psi1_n = log(s * phi_{N+1}(nu_n))
    |psi_n| = arccosh(s * Delta(lam_n))
    psi2_n = sqrt(|psi_n|^2 - psi1_n^2) * sign(lam_n - nu_n)

The vector ``psi`` interleaves the pairs: ``(psi1_1, psi2_1, psi1_2, ...)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BelowOne, DimensionMismatch, NegativeRadicand, NonPositiveArgument
from .recurrence import _run, discriminant_values
from .spectrum import gap_signs, lam_scale, spectral_data

ARCOSH_CLAMP = 1e-12
BELOW_ONE_TOL = 1e-9
RADICAND_CLAMP = 1e-10
SIGN_SNAP = 1e-10


@dataclass(frozen=True)
class MOData:
    psi1: np.ndarray
    psi2: np.ndarray
    height: np.ndarray
    xi: np.ndarray

    @property
    def psi(self):
        return pack(self.psi1, self.psi2)


def pack(psi1, psi2):
    out = np.empty(2 * len(psi1))
    out[0::2] = psi1
    out[1::2] = psi2
    return out


def unpack(psi):
    psi = np.asarray(psi, dtype=float)
    if psi.ndim != 1 or psi.size % 2:
        raise DimensionMismatch(f"psi must be a flat vector of even length, got shape {psi.shape}")
    return psi[0::2].copy(), psi[1::2].copy()


def _check_gap_index(N, n):
    if not 1 <= n <= N - 1:
        raise IndexError(f"gap index {n} outside 1..{N - 1}")


def _stable_log(phi, theta):
    # phi_{N+1} theta_N = 1 at a Dirichlet eigenvalue; a tiny phi_{N+1} is
    # the result of cancellation, so take the log of whichever factor is large
    return np.where(np.abs(phi) >= 1.0, np.log(np.abs(phi)), -np.log(np.abs(theta)))


def _norming_constants(p, nu):
    s = gap_signs(p.N)
    y = _run(p.a, p.b, nu, 0)
    phi, theta = s * y[0, 0, p.N + 1], s * y[1, 0, p.N]
    if np.any(phi <= 0) or np.any(theta <= 0):
        raise NonPositiveArgument(f"s * phi_(N+1)(nu) = {phi} is not positive")
    return _stable_log(phi, theta)


def _slit_heights(p, crit, closed):
    s = gap_signs(p.N)
    val = s * discriminant_values(p, crit, 0)[0]
    if np.any(val[~closed] < 1 - BELOW_ONE_TOL):
        raise BelowOne(f"s * Delta(lam_n) = {val} drops below 1")
    h = np.arccosh(np.maximum(val, 1.0))
    h[closed] = 0.0
    return h


def norming_constant(p, nu_n, n):
    """``log((-1)^(N-n) phi_{N+1}(nu_n))`` for gap ``n`` (1-based)."""
    _check_gap_index(p.N, n)
    s = gap_signs(p.N)[n - 1]
    y = _run(p.a, p.b, float(nu_n), 0)
    phi, theta = s * float(y[0, 0, p.N + 1]), s * float(y[1, 0, p.N])
    if phi <= 0 or theta <= 0:
        raise NonPositiveArgument(f"s * phi_(N+1)(nu_{n}) = {phi} is not positive")
    return float(_stable_log(phi, theta))


def slit_height(p, lambda_n, n, closed=False):
    """``arccosh((-1)^(N-n) Delta(lambda_n))``; zero on a closed gap."""
    _check_gap_index(p.N, n)
    if closed:
        return 0.0
    s = gap_signs(p.N)[n - 1]
    val = s * float(discriminant_values(p, float(lambda_n), 0)[0])
    if val < 1 - BELOW_ONE_TOL:
        raise BelowOne(f"s * Delta(lam_{n}) = {val} drops below 1")
    return float(np.arccosh(max(val, 1.0)))


def mo_data(p, sd=None):
    """All MO quantities for ``p``; ``sd`` may carry precomputed spectral data."""
    if sd is None:
        sd = spectral_data(p)
    closed = sd.gap_closed
    psi1 = _norming_constants(p, sd.nu)
    height = _slit_heights(p, sd.crit, closed)
    psi1[closed] = 0.0
    xi = height**2
    radicand = xi - psi1**2
    if np.any(radicand < -RADICAND_CLAMP * (1.0 + xi)):
        raise NegativeRadicand(f"|psi|^2 - psi1^2 = {radicand} is negative")
    diff = sd.crit - sd.nu
    sign = np.where(np.abs(diff) <= SIGN_SNAP * lam_scale(sd.edges), 0.0, np.sign(diff))
    psi2 = sign * np.sqrt(np.maximum(radicand, 0.0))
    psi2[closed] = 0.0
    psi2 += 0.0  # no negative zeros in output
    return MOData(psi1, psi2, height, xi)


def mo_map(p, sd=None):
    """The interleaved vector ``psi`` in ``R^(2N-2)``."""
    return mo_data(p, sd).psi
