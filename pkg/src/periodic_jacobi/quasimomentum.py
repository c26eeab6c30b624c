"""The quasimomentum on the real axis and the slit picture it produces.

``kappa`` solves ``cos kappa = (-1)^N Delta`` and maps band ``n`` onto the
segment ``[pi (n-1), pi n]`` and gap ``n`` onto the vertical slit through
``pi n`` of half-height ``|psi_n|``. Only the real-axis trace is computed:
bands, and the two boundary values ``lam +- i0`` on every open gap.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BranchInconsistency
from .mo_map import mo_data
from .recurrence import discriminant_values
from .spectrum import gap_signs, spectral_data, value_scale

GAP_TOL = 1e-9
ESTIMATE_SLACK = 1e-9


@dataclass(frozen=True)
class KappaSample:
    """One sample ``kappa(lam)``; ``region`` is ``"band"`` or ``"gap"``, ``index`` is 1-based."""

    lam: float
    re_kappa: float
    im_kappa: float
    region: str
    index: int


@dataclass(frozen=True)
class Slit:
    """Gap ``n``: the slit centre, its height two ways, and ``kappa`` at ``nu_n``."""

    index: int
    center: float
    height: float
    mo_height: float
    nu_height: float
    psi1: float

    @property
    def height_residual(self):
        return abs(self.height - self.mo_height)

    @property
    def nu_residual(self):
        return abs(self.nu_height - abs(self.psi1))


@dataclass(frozen=True)
class EstimateReport:
    lhs1: float
    mid: float
    quantity: float
    rhs1: float
    rhs2: float

    @property
    def chain(self):
        return np.array([self.lhs1, self.mid, self.quantity, self.rhs1, self.rhs2])

    @property
    def margins(self):
        return np.diff(self.chain)

    @property
    def holds(self):
        return bool(np.all(self.margins >= -ESTIMATE_SLACK))

    @property
    def equalities(self):
        """Positions (0..3) of comparisons that hold only as equalities."""
        return [int(i) for i in np.flatnonzero(np.abs(self.margins) <= ESTIMATE_SLACK)]


def _band_kappa(p, lam, n):
    # kappa = pi (n-1) + arccos((-1)^(N+n-1) Delta) on band n
    sign = 1.0 if (p.N + n - 1) % 2 == 0 else -1.0
    c = sign * discriminant_values(p, lam, 0)[0]
    theta = np.arccos(np.clip(c, -1.0, 1.0))
    # the edges are roots of Delta^2 = 1; arccos there amplifies rounding
    theta[0], theta[-1] = 0.0, np.pi
    return np.pi * (n - 1) + theta


def _gap_height(p, lam, n, scale):
    s = gap_signs(p.N)[n - 1]
    c = s * discriminant_values(p, lam, 0)[0]
    if np.any(c < 1.0 - GAP_TOL * scale):
        raise BranchInconsistency(f"(-1)^(N-n) Delta = {c.min():.3e} < 1 inside gap {n}")
    return np.arccosh(np.maximum(c, 1.0))


def kappa_on_real_axis(p, spec=None, points_per_band=16):
    """Sample ``kappa`` over every band and both banks of every open gap.

    Parameters
    ----------
    p : Potential
    spec : SpectralData, optional
    points_per_band : int
        Samples per band and per gap, edges included; at least 2.

    Returns
    -------
    list of KappaSample
        Band ``1``, gap ``1`` (``+i0`` then ``-i0`` at each point), band
        ``2``, and so on. Closed gaps contribute nothing.

    Raises
    ------
    BranchInconsistency
        If ``Re kappa`` fails to increase across a band.
    """
    if points_per_band < 2:
        raise ValueError(f"points_per_band={points_per_band} must be at least 2")
    spec = spec if spec is not None else spectral_data(p)
    N = p.N
    scale = value_scale(p, spec.edges)
    out = []
    for n in range(1, N + 1):
        lo, hi = spec.bands[n - 1]
        lam = np.linspace(lo, hi, points_per_band)
        re = _band_kappa(p, lam, n)
        if np.any(np.diff(re) < 0) or np.any(np.diff(re[1:-1]) <= 0):
            raise BranchInconsistency(f"Re kappa not increasing on band {n}")
        out.extend(KappaSample(float(l), float(r), 0.0, "band", n) for l, r in zip(lam, re))
        if n == N or spec.gap_closed[n - 1]:
            continue
        lam = np.linspace(spec.lower[n - 1], spec.upper[n - 1], points_per_band)
        h = _gap_height(p, lam, n, scale)
        h[0] = h[-1] = 0.0
        for l, v in zip(lam, h):
            out.append(KappaSample(float(l), np.pi * n, float(v), "gap", n))
            out.append(KappaSample(float(l), np.pi * n, 0.0 - float(v), "gap", n))
    return out


def kappa_at(p, lam, n, spec=None):
    """``(Re kappa, |Im kappa|)`` at a point ``lam`` in the closure of gap ``n``."""
    spec = spec if spec is not None else spectral_data(p)
    h = _gap_height(p, np.atleast_1d(float(lam)), n, value_scale(p, spec.edges))
    return np.pi * n, float(h[0])


def slit_data(p, spec=None):
    """Slits ``Gamma_n`` with heights read off ``kappa`` at the critical points.

    ``height`` is ``Im kappa(lam_n + i0)`` and ``mo_height`` is ``|psi_n|``
    from the MO map; ``nu_height`` is ``|Im kappa(nu_n + i0)|``, which should
    equal ``|psi1_n|``.
    """
    spec = spec if spec is not None else spectral_data(p)
    md = mo_data(p, spec)
    scale = value_scale(p, spec.edges)
    out = []
    for n in range(1, p.N):
        if spec.gap_closed[n - 1]:
            height = nu_height = 0.0
        else:
            both = _gap_height(p, np.array([spec.crit[n - 1], spec.nu[n - 1]]), n, scale)
            height, nu_height = float(both[0]), float(both[1])
        out.append(Slit(n, np.pi * n, height, float(md.height[n - 1]), nu_height, float(md.psi1[n - 1])))
    return out


def verify_estimates(p, spec=None):
    """Evaluate the two-sided bound on ``sum b^2 + 2 sum a^2``.

    The chain is::

        exp(2 max|psi_n|) / 4  <=  width^2 / 4  <=  sum b^2 + 2 sum a^2
                               <=  N width^2     <=  16 N exp(2 max|psi_n|)

    with ``width = lam_N^- - lam_0^+``.
    """
    spec = spec if spec is not None else spectral_data(p)
    md = mo_data(p, spec)
    e = float(np.exp(2.0 * np.max(md.height, initial=0.0)))
    w2 = float(spec.width) ** 2
    quantity = float(np.sum(p.b**2) + 2.0 * np.sum(p.a**2))
    return EstimateReport(0.25 * e, 0.25 * w2, quantity, p.N * w2, 16.0 * p.N * e)
