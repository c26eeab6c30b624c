"""Fundamental solutions of the three-term recurrence and the discriminant.

For a potential ``p`` and spectral parameter ``lam`` the recurrence

    a_{j-1} y_{j-1} + b_j y_j + a_j y_{j+1} = lam * y_j,    a_0 = a_N,

is run forward for ``j = 1..N`` from the two initial conditions
``phi = (0, 1, ...)`` and ``theta = (1, 0, ...)``. Tables are indexed
``0..N+1`` exactly as in the recurrence. Derivatives in ``lam`` and in the
coefficients are obtained by differentiating the recurrence itself
(forward mode); finite differences are never used here.
"""
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange


@dataclass(frozen=True)
class SolutionTable:
    """Values of ``phi`` and ``theta`` at one ``lam``.

    ``dphi[r-1]`` and ``dtheta[r-1]`` hold the ``r``-th ``lam``-derivative
    for ``r = 1..deriv_order`` (empty arrays when ``deriv_order == 0``).
    """

    lam: float
    phi: np.ndarray
    theta: np.ndarray
    dphi: np.ndarray
    dtheta: np.ndarray


@dataclass(frozen=True)
class DiscriminantValue:
    delta: float
    ddelta: float
    d2delta: float


@dataclass(frozen=True)
class SolutionGradient:
    """Coefficient derivatives of the solution tables at one ``lam``.

    ``phi_q[j, k, 0]`` is ``d phi_j / d x_{k+1}`` and ``phi_q[j, k, 1]`` is
    ``d phi_j / d b_{k+1}``; shape ``(N+2, N, 2)``. ``phi_q_lam`` holds the
    same derivatives of ``phi'`` when requested, else ``None``.
    """

    lam: float
    phi_q: np.ndarray
    theta_q: np.ndarray
    phi_q_lam: np.ndarray = None
    theta_q_lam: np.ndarray = None


def _run(a, b, lam, order):
    # returns shape (2, order+1, N+2) + lam.shape; axis 0 is (phi, theta)
    N = a.size
    lam = np.asarray(lam, dtype=float)
    y = np.zeros((N + 2, 2, order + 1) + lam.shape)  # site-major while iterating
    y[1, 0, 0] = 1.0
    y[0, 1, 0] = 1.0
    r = np.arange(1, order + 1, dtype=float).reshape((-1,) + (1,) * lam.ndim)
    for j in range(1, N + 1):
        aj, ap = a[j - 1], a[(j - 2) % N]
        cur = y[j]
        nxt = (lam - b[j - 1]) * cur - ap * y[j - 1]
        if order:
            nxt[:, 1:] += r * cur[:, :-1]
        y[j + 1] = nxt / aj
    return np.moveaxis(y, 0, 2)


def _run_q(a, b, lam, y, order):
    """Forward-mode coefficient derivatives.

    ``y`` is the output of :func:`_run` with at least ``order`` lam-derivatives.
    Returns shape ``(2, order+1, N+2, 2N) + lam.shape``; the last-but-lam axis
    runs over ``x_1..x_N, b_1..b_N``.
    """
    N = a.size
    lam = np.asarray(lam, dtype=float)
    D = 2 * N
    dy = np.zeros((2, order + 1, N + 2, D) + lam.shape)
    for j in range(1, N + 1):
        aj, ap, bj = a[j - 1], a[(j - 2) % N], b[j - 1]
        ij, ip = j - 1, (j - 2) % N  # x-direction index of a_j and a_{j-1}
        shift = lam - bj
        for r in range(order + 1):
            rhs = shift * dy[:, r, j] - ap * dy[:, r, j - 1]
            if r:
                rhs = rhs + r * dy[:, r - 1, j]
            # explicit Kronecker sources; ip == N-1 at j == 1 is the a_0 = a_N wrap
            rhs[:, N + ij] -= y[:, r, j]
            rhs[:, ip] -= ap * y[:, r, j - 1]
            rhs[:, ij] -= aj * y[:, r, j + 1]
            dy[:, r, j + 1] = rhs / aj
    return dy


def evaluate_solutions(p, lam, deriv_order=0):
    """Tables of ``phi`` and ``theta`` (and ``lam``-derivatives) at ``lam``."""
    if deriv_order not in (0, 1, 2):
        raise ValueError("deriv_order must be 0, 1 or 2")
    lam = float(lam)
    y = _run(p.a, p.b, lam, deriv_order)
    return SolutionTable(lam, y[0, 0], y[1, 0], y[0, 1:], y[1, 1:])


def discriminant_values(p, lam, order=2):
    """Vectorized ``Delta`` and its ``lam``-derivatives.

    Returns an array of shape ``(order+1,) + shape(lam)``.
    """
    N = p.N
    y = _run(p.a, p.b, lam, order)
    return 0.5 * (y[0, :, N + 1] + y[1, :, N])


def discriminant(p, lam):
    """``Delta``, ``Delta'`` and ``Delta''`` at a real ``lam``."""
    d = discriminant_values(p, float(lam), 2)
    return DiscriminantValue(float(d[0]), float(d[1]), float(d[2]))


def wronskian(p, f, g, k):
    """``a_k (f_k g_{k+1} - f_{k+1} g_k)`` with ``a_0 = a_N``."""
    f = np.asarray(f)
    g = np.asarray(g)
    n = min(f.shape[0], g.shape[0])
    if not 0 <= k < n - 1:
        raise IndexOutOfRange(f"Wronskian index {k} outside 0..{n - 2}")
    ak = p.a[(k - 1) % p.N]
    return ak * (f[k] * g[k + 1] - f[k + 1] * g[k])


def wronskian_sequence(p, f, g):
    """All Wronskians ``{f, g}_k`` for ``k = 0..len-2`` (vectorized)."""
    f = np.asarray(f)
    g = np.asarray(g)
    n = min(f.shape[0], g.shape[0])
    ak = p.a[(np.arange(n - 1) - 1) % p.N]
    ak = ak.reshape((-1,) + (1,) * (f.ndim - 1))
    return ak * (f[: n - 1] * g[1:n] - f[1:n] * g[: n - 1])


def _as_field(dq):
    # (..., 2N) -> (..., N, 2) with columns (x, b)
    N = dq.shape[-1] // 2
    return np.stack([dq[..., :N], dq[..., N:]], axis=-1)


def q_gradient_solutions(p, lam, deriv_order=0):
    """Coefficient gradients of the ``phi``/``theta`` tables at ``lam``.

    With ``deriv_order=1`` the gradients of the first ``lam``-derivative
    tables are included, which is what ``d Delta'`` needs.
    """
    if deriv_order not in (0, 1):
        raise ValueError("deriv_order must be 0 or 1")
    lam = float(lam)
    a, b = p.a, p.b
    y = _run(a, b, lam, deriv_order)
    dy = _run_q(a, b, lam, y, deriv_order)
    grad = SolutionGradient(lam, _as_field(dy[0, 0]), _as_field(dy[1, 0]))
    if deriv_order:
        grad = SolutionGradient(
            lam, grad.phi_q, grad.theta_q, _as_field(dy[0, 1]), _as_field(dy[1, 1])
        )
    return grad


def discriminant_gradient(p, lam, deriv_order=0):
    """Coefficient gradients of ``Delta`` (and ``Delta'``) at ``lam``.

    ``lam`` may be an array. Returns shape ``(deriv_order+1,) + shape(lam) +
    (N, 2)``.
    """
    N = p.N
    a, b = p.a, p.b
    lam = np.asarray(lam, dtype=float)
    y = _run(a, b, lam, deriv_order)
    dy = _run_q(a, b, lam, y, deriv_order)
    dd = 0.5 * (dy[0, :, N + 1] + dy[1, :, N])  # (order+1, 2N, *lam)
    dd = np.moveaxis(dd, 1, -1)
    return _as_field(dd)
