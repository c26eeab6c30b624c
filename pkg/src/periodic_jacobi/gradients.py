"""Gradients of the spectral data, the symplectic form, and identity checks.

A gradient field is an ``(N, 2)`` array whose row ``k-1`` holds
``(d/dx_k, d/db_k)``; all ``2N`` coordinates are treated as independent, and
:func:`periodic_jacobi.potential.project_gradient` pulls a field back to the
free coordinates.

Two sign facts are fixed here by direct computation (finite differences):

* the norming-constant gradient is ``-B_n + c_n * d nu_n`` with
  ``c_n = phi'_{N+1} theta_N - phi'_N theta_{N+1}`` at ``nu_n``, so
  ``B_n ^ d nu_n = -2`` while ``d psi1_n ^ d nu_n = +2``;
* ``sum_j phi_j(nu_n)^2 = -a_N phi_{N+1}(nu_n) phi'_N(nu_n)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDenominator,
    LengthMismatch,
    SingularJacobian,
    VanishingSecondDerivative,
)
from .mo_map import _check_gap_index, mo_data, mo_map
from .potential import embed, project, project_gradient
from .recurrence import _run, discriminant_gradient, discriminant_values, wronskian_sequence
from .spectrum import gap_signs, spectral_data, value_scale

# B_n ^ d nu_m = B_WEDGE_NU * delta_{nm}
B_WEDGE_NU = -2.0
# d psi1_n ^ d nu_m = PSI1_WEDGE_NU * delta_{nm}
PSI1_WEDGE_NU = 2.0

JACOBIAN_TAU = 1e-6
FD_STEP = 1e-6


def symplectic_form(f, g):
    """Antisymmetric pairing of two gradient fields (broadcasts over leading axes).

    ``sum_n (f1_n g2_n - f2_n g1_n) - (f1_{n-1} g2_n - f2_n g1_{n-1})`` with the
    cyclic convention ``f1_0 = f1_N``.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape[-2:] != g.shape[-2:] or f.shape[-1] != 2:
        raise LengthMismatch(f"fields of shape {f.shape} and {g.shape} cannot be paired")
    f1, f2 = f[..., 0], f[..., 1]
    g1, g2 = g[..., 0], g[..., 1]
    df1 = f1 - np.roll(f1, 1, axis=-1)
    dg1 = g1 - np.roll(g1, 1, axis=-1)
    return np.sum(df1 * g2 - f2 * dg1, axis=-1)


@dataclass(frozen=True)
class _Tables:
    # rows indexed by gap, columns by site 0..N+1
    phi: np.ndarray
    theta: np.ndarray
    dphi: np.ndarray
    dtheta: np.ndarray


def _tables_at(p, lam):
    y = _run(p.a, p.b, np.asarray(lam, dtype=float), 1)
    return _Tables(y[0, 0].T, y[1, 0].T, y[0, 1].T, y[1, 1].T)


def _grad_nu_all(p, t, scale):
    N, a = p.N, p.a
    ph = t.phi
    den = a[-1] * ph[:, N + 1] * t.dphi[:, N]
    if np.any(np.abs(den) < 1e-14 * scale):
        raise DegenerateDenominator(f"a_N phi_(N+1) phi'_N = {den} at a Dirichlet eigenvalue")
    field = np.stack([2 * a * ph[:, 1 : N + 1] * ph[:, 2 : N + 2], ph[:, 1 : N + 1] ** 2], -1)
    return -field / den[:, None, None]


def _b_field_all(p, t):
    N, a = p.N, p.a
    ph, th = t.phi, t.theta
    fx = a * (ph[:, 2 : N + 2] * th[:, 1 : N + 1] + ph[:, 1 : N + 1] * th[:, 2 : N + 2])
    fb = ph[:, 1 : N + 1] * th[:, 1 : N + 1]
    return np.stack([fx, fb], -1) / a[-1]


def _psi1_coefficient(p, t):
    N = p.N
    return t.dphi[:, N + 1] * t.theta[:, N] - t.dphi[:, N] * t.theta[:, N + 1]


def _scale(p, sd):
    return value_scale(p, sd.edges)


def _dirichlet_fields(p, sd):
    t = _tables_at(p, sd.nu)
    dnu = _grad_nu_all(p, t, _scale(p, sd))
    B = _b_field_all(p, t)
    dpsi1 = -B + _psi1_coefficient(p, t)[:, None, None] * dnu
    return t, dnu, B, dpsi1


def _grad_xi_all(p, sd, md):
    s = gap_signs(p.N)
    dD = discriminant_gradient(p, sd.crit, 0)[0]
    r = md.height
    # 1 / (d cosh(sqrt xi) / d xi) = 2 sqrt(xi) / sinh(sqrt xi) -> 2
    with np.errstate(invalid="ignore", divide="ignore"):
        inv = np.where(r < 1e-8, 2.0, 2.0 * r / np.sinh(r))
    return (s * inv)[:, None, None] * dD


def _grad_lambda_all(p, sd):
    d2 = discriminant_values(p, sd.crit, 2)[2]
    if np.any(np.abs(d2) <= 1e-10):
        raise VanishingSecondDerivative(f"Delta''(lam_n) = {d2}")
    dDp = discriminant_gradient(p, sd.crit, 1)[1]
    return -dDp / d2[:, None, None]


def grad_nu(p, n, sd=None):
    """Gradient of the Dirichlet eigenvalue ``nu_n``."""
    _check_gap_index(p.N, n)
    sd = sd or spectral_data(p)
    t = _tables_at(p, sd.nu[n - 1 : n])
    return _grad_nu_all(p, t, _scale(p, sd))[0]


def b_field(p, n, sd=None):
    """The field ``B_n`` built from ``phi`` and ``theta`` at ``nu_n``."""
    _check_gap_index(p.N, n)
    sd = sd or spectral_data(p)
    return _b_field_all(p, _tables_at(p, sd.nu[n - 1 : n]))[0]


def grad_psi1(p, n, sd=None):
    """Gradient of the norming constant ``psi1_n``.

    Evaluated by formula at closed gaps as well, where it gives the
    one-sided limit.
    """
    _check_gap_index(p.N, n)
    sd = sd or spectral_data(p)
    t = _tables_at(p, sd.nu[n - 1 : n])
    dnu = _grad_nu_all(p, t, _scale(p, sd))
    B = _b_field_all(p, t)
    return (-B + _psi1_coefficient(p, t)[:, None, None] * dnu)[0]


def grad_lambda_crit(p, n, sd=None):
    """Gradient of the critical point ``lam_n``: ``-dDelta'(lam_n) / Delta''(lam_n)``."""
    _check_gap_index(p.N, n)
    sd = sd or spectral_data(p)
    d2 = float(discriminant_values(p, sd.crit[n - 1], 2)[2])
    if abs(d2) <= 1e-10:
        raise VanishingSecondDerivative(f"Delta''(lam_{n}) = {d2}")
    return -discriminant_gradient(p, sd.crit[n - 1], 1)[1] / d2


def grad_xi(p, n, sd=None):
    """Gradient of ``xi_n = |psi_n|^2``."""
    _check_gap_index(p.N, n)
    sd = sd or spectral_data(p)
    md = mo_data(p, sd)
    return _grad_xi_all(p, sd, md)[n - 1]


def sum_swap_identities(z, w):
    """Both sides of the two partial-sum interchange identities.

    Returns ``((lhs1, rhs1), (lhs2, rhs2))`` with

    ``lhs1 = sum_k z_k sum_{i<=k} w_i``,  ``rhs1 = sum_k w_k sum_{i>=k} z_i``,
    ``lhs2 = sum_{k>=2} z_k sum_{i<k} w_i``, ``rhs2 = sum_{k<N} w_k sum_{i>k} z_i``.
    """
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    cw = np.cumsum(w)
    tail_z = np.cumsum(z[::-1])[::-1]
    lhs1 = np.sum(z * cw)
    rhs1 = np.sum(w * tail_z)
    lhs2 = np.sum(z[1:] * cw[:-1])
    rhs2 = np.sum(w[:-1] * tail_z[1:])
    return (lhs1, rhs1), (lhs2, rhs2)


def _residual(lhs, rhs, *terms):
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    mags = [np.max(np.abs(np.asarray(x, dtype=float)), initial=0.0) for x in (lhs, rhs) + terms]
    return float(np.max(np.abs(lhs - rhs), initial=0.0)), 1.0 + max(mags)


def _size(f, g):
    # magnitude of the individual products summed by the pairing
    return 2.0 * np.linalg.norm(f) * np.linalg.norm(g)


def verify_identities(p, n, m, sd=None, seed=0):
    """Residuals of the Wronskian/partial-sum identities and the ``B``-pairings.

    Returns a dict ``name -> (abs_residual, scale)`` where ``scale`` is one
    plus the largest intermediate magnitude. Cross identities between gaps
    ``n`` and ``m`` are only included when ``n != m``.
    """
    N = p.N
    _check_gap_index(N, n)
    _check_gap_index(N, m)
    sd = sd or spectral_data(p)
    t, dnu, B, _ = _dirichlet_fields(p, sd)
    i, j = n - 1, m - 1
    aN = p.a[-1]
    out = {}

    for label, k in (("n", i), ("m", j)):
        sq = t.phi[k, 1 : N + 1] ** 2
        rhs = -aN * t.phi[k, N + 1] * t.dphi[k, N]
        out[f"phi_square[{label}]"] = _residual(np.sum(sq), rhs, sq)
    out["b_wedge_nu[n,n]"] = _residual(symplectic_form(B[i], dnu[i]), B_WEDGE_NU, _size(B[i], dnu[i]))

    if n != m and sd.nu[i] != sd.nu[j]:
        ph, th = t.phi[i], t.theta[i]  # hat: at nu_n
        pt, tt = t.phi[j], t.theta[j]  # tilde: at nu_m
        dv = sd.nu[i] - sd.nu[j]
        sl = slice(1, N + 1)

        def partial(u, v):
            return np.cumsum(u[sl] * v[sl])

        # {f, g}_k for k = 1..N
        def wr(f, g):
            return wronskian_sequence(p, f, g)[1 : N + 1]

        w = wr(pt, ph)
        out["phi_phi[sum]"] = _residual(np.sum(ph[sl] * pt[sl]), 0.0, ph[sl] * pt[sl])
        out["phi_phi[bracket]"] = _residual(w, dv * partial(ph, pt), w)
        w = wr(tt, th)
        out["theta_theta[sum]"] = _residual(np.sum(th[sl] * tt[sl]), w[-1] / dv, th[sl] * tt[sl])
        out["theta_theta[bracket]"] = _residual(w, dv * partial(th, tt), w)
        w = wr(pt, th)
        out["theta_phi[sum]"] = _residual(
            np.sum(th[sl] * pt[sl]), aN * (1 - pt[N + 1] * th[N]) / dv, th[sl] * pt[sl]
        )
        out["theta_phi[bracket]"] = _residual(w, -aN + dv * partial(th, pt), w)
        w = wr(tt, ph)
        out["phi_theta[sum]"] = _residual(
            np.sum(ph[sl] * tt[sl]), aN * (tt[N] * ph[N + 1] - 1) / dv, ph[sl] * tt[sl]
        )
        out["phi_theta[bracket]"] = _residual(w, aN + dv * partial(ph, tt), w)

        out["nu_wedge_nu"] = _residual(symplectic_form(dnu[i], dnu[j]), 0.0, _size(dnu[i], dnu[j]))
        out["b_wedge_b"] = _residual(symplectic_form(B[i], B[j]), 0.0, _size(B[i], B[j]))
        out["b_wedge_nu[n,m]"] = _residual(symplectic_form(B[i], dnu[j]), 0.0, _size(B[i], dnu[j]))

    rng = np.random.default_rng(seed)
    z, w = rng.standard_normal((2, N))
    (l1, r1), (l2, r2) = sum_swap_identities(z, w)
    out["sum_swap[first]"] = _residual(l1, r1, np.abs(z).sum() * np.abs(w).sum())
    out["sum_swap[second]"] = _residual(l2, r2, np.abs(z).sum() * np.abs(w).sum())
    return out


@dataclass(frozen=True)
class BasisReport:
    sigma_min: float
    norm: float
    nu_nu: float
    psi1_psi1: float
    psi1_nu: float

    @property
    def relative_sigma(self):
        return self.sigma_min / self.norm

    @property
    def max_pairing(self):
        return max(self.nu_nu, self.psi1_psi1, self.psi1_nu)


def pairing_matrices(p, sd=None):
    """``(dnu ^ dnu, dpsi1 ^ dpsi1, dpsi1 ^ dnu)`` as ``(N-1, N-1)`` arrays."""
    sd = sd or spectral_data(p)
    _, dnu, _, dpsi1 = _dirichlet_fields(p, sd)
    pair = symplectic_form
    nn = pair(dnu[:, None], dnu[None, :])
    pp = pair(dpsi1[:, None], dpsi1[None, :])
    pn = pair(dpsi1[:, None], dnu[None, :])
    return nn, pp, pn


def verify_basis(p, sd=None):
    """Pairing residuals and conditioning of the ``{dnu_n, dpsi1_n}`` frame."""
    sd = sd or spectral_data(p)
    _, dnu, _, dpsi1 = _dirichlet_fields(p, sd)
    M = np.concatenate([project_gradient(dnu), project_gradient(dpsi1)])
    sv = np.linalg.svd(M, compute_uv=False)
    nn, pp, pn = pairing_matrices(p, sd)
    eye = np.eye(p.N - 1)
    return BasisReport(
        sigma_min=float(sv[-1]),
        norm=float(sv[0]),
        nu_nu=float(np.max(np.abs(nn))),
        psi1_psi1=float(np.max(np.abs(pp))),
        psi1_nu=float(np.max(np.abs(pn - PSI1_WEDGE_NU * eye))),
    )


def _fd_rows(p, rows, h=FD_STEP):
    """Central differences of selected ``psi`` components along free coordinates."""
    N = p.N
    u = project(p)
    out = np.empty((len(rows), u.size))
    for c in range(u.size):
        e = np.zeros_like(u)
        e[c] = h
        fp = mo_map(embed(u + e, N))
        fm = mo_map(embed(u - e, N))
        out[:, c] = (fp[rows] - fm[rows]) / (2 * h)
    return out


def mo_jacobian(p, sd=None, tau=JACOBIAN_TAU):
    """Jacobian of ``psi`` with respect to the free coordinates.

    Rows follow the interleaved ``psi`` order. A ``psi2`` row comes from the
    chain rule on ``psi2 = sign * sqrt(xi - psi1^2)`` unless ``|psi2| <= tau``,
    where the square root is singular and central differences are used.
    """
    sd = sd or spectral_data(p)
    md = mo_data(p, sd)
    _, _, _, dpsi1 = _dirichlet_fields(p, sd)
    dxi = _grad_xi_all(p, sd, md)
    J = np.empty((2 * (p.N - 1), 2 * (p.N - 1)))
    J[0::2] = project_gradient(dpsi1)
    small = np.abs(md.psi2) <= tau
    with np.errstate(divide="ignore", invalid="ignore"):
        dpsi2 = (dxi - 2 * md.psi1[:, None, None] * dpsi1) / (2 * md.psi2[:, None, None])
    J[1::2] = project_gradient(np.where(small[:, None, None], 0.0, dpsi2))
    if np.any(small):
        rows = 2 * np.flatnonzero(small) + 1
        J[rows] = _fd_rows(p, rows)
    sv = np.linalg.svd(J, compute_uv=False)
    if sv[-1] < 1e-12 * sv[0]:
        raise SingularJacobian(f"smallest singular value {sv[-1]:.3e} vs norm {sv[0]:.3e}")
    return J
