"""Independent reference computations used only by the tests.

Nothing here imports the package's numerical code: the discriminant comes
from 2x2 transfer-matrix products, spectral landmarks from brentq on that
discriminant, and high-precision values from mpmath.
"""
import mpmath as mp
import numpy as np
from scipy.optimize import brentq


def transfer(x, b, lam):
    """Monodromy matrix mapping ``(y_0, y_1)`` to ``(y_N, y_{N+1})``.

    Columns are the images of ``theta = (1, 0)`` and ``phi = (0, 1)``.
    """
    a = np.exp(np.asarray(x, dtype=float))
    b = np.asarray(b, dtype=float)
    N = a.size
    M = np.eye(2)
    for j in range(1, N + 1):
        aj, ap = a[j - 1], a[(j - 2) % N]
        T = np.array([[0.0, 1.0], [-ap / aj, (lam - b[j - 1]) / aj]])
        M = T @ M
    return M


def delta(x, b, lam):
    """``Delta = (phi_{N+1} + theta_N) / 2`` as half the monodromy trace."""
    return 0.5 * np.trace(transfer(x, b, lam))


def phi_theta(x, b, lam):
    """``(phi_N, phi_{N+1}, theta_N, theta_{N+1})`` from the monodromy."""
    M = transfer(x, b, lam)
    return M[0, 1], M[1, 1], M[0, 0], M[1, 0]


def mp_tables(x, b, lam, dps=50):
    """``phi_0..phi_{N+1}`` and ``theta_0..theta_{N+1}`` in high precision."""
    with mp.workdps(dps):
        a = [mp.e ** mp.mpf(v) for v in x]
        bb = [mp.mpf(v) for v in b]
        lam = mp.mpf(lam)
        N = len(a)
        out = []
        for y0, y1 in ((0, 1), (1, 0)):
            y = [mp.mpf(y0), mp.mpf(y1)]
            for j in range(1, N + 1):
                y.append(((lam - bb[j - 1]) * y[j] - a[(j - 2) % N] * y[j - 1]) / a[j - 1])
            out.append(y)
        return out


def _roots(f, lo, hi, samples=4000):
    grid = np.linspace(lo, hi, samples)
    vals = np.array([f(t) for t in grid])
    out = []
    for i in range(samples - 1):
        if vals[i] == 0.0:
            out.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            out.append(brentq(f, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15))
    return np.array(out)


def spectral_reference(x, b, samples=4000):
    """Open-gap landmarks from root finding on the transfer-matrix discriminant.

    Returns ``(outer_edges, nu, crit)``: the extreme edges ``lam_0^+``,
    ``lam_N^-``, the zeros of ``phi_N``, and the zeros of ``Delta'`` (by
    central differences of ``Delta``).
    """
    a = np.exp(np.asarray(x, dtype=float))
    R = float(np.max(np.abs(b)) + 2 * np.max(a)) + 0.5
    roots = _roots(lambda t: abs(delta(x, b, t)) - 1.0, -R, R, samples)
    nu = _roots(lambda t: phi_theta(x, b, t)[0], -R, R, samples)
    h = 1e-6

    def dprime(t):
        return (delta(x, b, t + h) - delta(x, b, t - h)) / (2 * h)

    crit = _roots(dprime, roots[0], roots[-1], samples)
    return np.array([roots[0], roots[-1]]), nu, crit


def chebyshev_edges(N):
    """Band edges of the zero potential: ``2 cos(k pi / N)``, each interior one doubled."""
    k = np.arange(N + 1)
    pts = np.sort(2 * np.cos(k * np.pi / N))
    return np.concatenate([[pts[0]], np.repeat(pts[1:-1], 2), [pts[-1]]])


def central_difference(f, u, h=1e-6):
    """Jacobian of ``f`` at ``u`` by central differences, one column per coordinate."""
    u = np.asarray(u, dtype=float)
    cols = []
    for c in range(u.size):
        e = np.zeros_like(u)
        e[c] = h
        cols.append((np.asarray(f(u + e)) - np.asarray(f(u - e))) / (2 * h))
    return np.stack(cols, axis=-1)


def relative_error(analytic, reference, floor=1.0):
    """Norm-wise relative error with a unit floor on the reference norm."""
    return float(np.linalg.norm(analytic - reference) / max(np.linalg.norm(reference), floor))
