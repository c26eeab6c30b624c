"""Band edges, Dirichlet and Neumann eigenvalues, critical points of the discriminant.

Every spectral landmark is a root of a polynomial built from the recurrence,
but roots are located as eigenvalues of small symmetric matrices (which
handle the double roots at closed gaps without fuss) and then checked
against the recurrence.
"""
from dataclasses import dataclass

import numpy as np

from .errors import (
    BracketFailure,
    ConvergenceFailure,
    OrderingViolation,
    ResidualTooLarge,
)
from .recurrence import _run, discriminant_values

RESIDUAL_TOL = 1e-9
CLOSED_GAP_TOL = 1e-10


@dataclass(frozen=True)
class TridiagonalSpec:
    """Symmetric tridiagonal matrix with an optional corner coupling.

    ``corner`` is added to entries ``(0, n-1)`` and ``(n-1, 0)``; for
    ``n == 2`` that lands on the ordinary off-diagonal.
    """

    diag: np.ndarray
    off: np.ndarray
    corner: float = 0.0

    def dense(self):
        diag = np.asarray(self.diag, dtype=float)
        off = np.asarray(self.off, dtype=float)
        n = diag.size
        M = np.diag(diag)
        if n > 1:
            M += np.diag(off, 1) + np.diag(off, -1)
            M[0, n - 1] += self.corner
            M[n - 1, 0] += self.corner
        return M


@dataclass(frozen=True)
class SpectralData:
    """Spectral landmarks of one potential.

    ``edges`` is ``(lam_0^+, lam_1^-, lam_1^+, ..., lam_{N-1}^+, lam_N^-)``;
    ``nu``, ``mu``, ``crit`` and ``gap_closed`` are indexed by gap
    ``n = 1..N-1`` (0-based position ``n-1``).
    """

    edges: np.ndarray
    nu: np.ndarray
    mu: np.ndarray
    crit: np.ndarray
    gap_closed: np.ndarray

    @property
    def N(self):
        return self.edges.size // 2

    @property
    def lower(self):
        """``lam_n^-`` for each gap."""
        return self.edges[1:-1:2]

    @property
    def upper(self):
        """``lam_n^+`` for each gap."""
        return self.edges[2:-1:2]

    @property
    def width(self):
        """``lam_N^- - lam_0^+``, the convex hull of the spectrum."""
        return self.edges[-1] - self.edges[0]

    @property
    def bands(self):
        """``(N, 2)`` array of band intervals ``[lam_{n-1}^+, lam_n^-]``."""
        return self.edges.reshape(-1, 2)


def gap_signs(N):
    """``(-1)^(N-n)`` for ``n = 1..N-1``."""
    n = np.arange(1, N)
    return np.where((N - n) % 2 == 0, 1.0, -1.0)


def lam_scale(edges):
    return 1.0 + float(np.max(np.abs(edges)))


def value_scale(p, edges):
    """Magnitude of the recurrence polynomials over the spectral range.

    The solutions are degree ``<= N`` polynomials with leading coefficient
    ``1/prod(a)``, so residual tolerances are measured against this.
    """
    return 1.0 + float(np.max(np.abs(edges))) ** p.N / float(np.prod(p.a))


def _jacobi_eigenvalues(M, tol=1e-15, max_sweeps=60):
    A = np.array(M, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    norm = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(A, 1) ** 2))
        if off <= tol * max(norm, 1e-300):
            return np.diag(A).copy(), V
        for i in range(n - 1):
            for j in range(i + 1, n):
                apq = A[i, j]
                if apq == 0.0:
                    continue
                theta = (A[j, j] - A[i, i]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                Ai, Aj = A[:, i].copy(), A[:, j].copy()
                A[:, i] = c * Ai - s * Aj
                A[:, j] = s * Ai + c * Aj
                Ai, Aj = A[i, :].copy(), A[j, :].copy()
                A[i, :] = c * Ai - s * Aj
                A[j, :] = s * Ai + c * Aj
                A[i, j] = A[j, i] = 0.0
                Vi, Vj = V[:, i].copy(), V[:, j].copy()
                V[:, i] = c * Vi - s * Vj
                V[:, j] = s * Vi + c * Vj
    raise ConvergenceFailure(f"Jacobi rotations did not converge in {max_sweeps} sweeps")


def symmetric_eigenvalues(t, method="lapack", check=True):
    """Ascending eigenvalues of a :class:`TridiagonalSpec`.

    Parameters
    ----------
    t : TridiagonalSpec
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls :func:`numpy.linalg.eigh`; ``"jacobi"`` runs cyclic
        Jacobi rotations on the dense matrix.
    check : bool
        Verify ``||M v - lam v|| <= 1e-10 ||M||`` for every eigenpair.
    """
    M = t.dense()
    if M.shape[0] == 0:
        return np.zeros(0)
    if method == "lapack":
        w, V = np.linalg.eigh(M)
    elif method == "jacobi":
        w, V = _jacobi_eigenvalues(M)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(w)
    w, V = w[order], V[:, order]
    if check:
        res = np.linalg.norm(M @ V - V * w, axis=0)
        bound = 1e-10 * max(np.linalg.norm(M), 1e-300)
        if np.any(res > bound):
            raise ConvergenceFailure(f"eigenpair residual {res.max():.3e} exceeds {bound:.3e}")
    return w


def periodic_matrix(p, sign=1.0):
    """Periodic (``sign=+1``) or antiperiodic (``sign=-1``) N x N matrix."""
    a = p.a
    return TridiagonalSpec(p.b, a[:-1], sign * a[-1])


def dirichlet_matrix(p):
    return TridiagonalSpec(p.b[:-1], p.a[:-2])


def neumann_matrix(p):
    return TridiagonalSpec(p.b[1:], p.a[1:-1])


def _band_edges(p, method):
    N = p.N
    roots = np.sort(
        np.concatenate(
            [
                symmetric_eigenvalues(periodic_matrix(p, 1.0), method),
                symmetric_eigenvalues(periodic_matrix(p, -1.0), method),
            ]
        )
    )
    if np.any(roots[1::2] - roots[0::2] <= 0):
        raise OrderingViolation(f"band chain violated: {roots}")
    # lam_0^+ has Delta = (-1)^N, gap n has (-1)^(N-n), lam_N^- has +1
    expected = np.empty(2 * N)
    expected[0] = (-1.0) ** N
    expected[-1] = 1.0
    expected[1:-1] = np.repeat(gap_signs(N), 2)
    delta, slope = discriminant_values(p, roots, 1)
    scale = value_scale(p, roots)
    bad = np.abs(delta - expected) > RESIDUAL_TOL * scale
    if np.any(bad):
        raise OrderingViolation(
            f"edge labels inconsistent with Delta: Delta={delta[bad]}, expected {expected[bad]}"
        )
    # one Newton step on Delta = +-1 where the root is simple
    with np.errstate(divide="ignore", invalid="ignore"):
        step = (delta - expected) / slope
    ok = np.isfinite(step) & (np.abs(step) < 1e-10 * lam_scale(roots))
    polished = np.where(ok, roots - step, roots)
    if np.all(polished[1::2] - polished[0::2] > 0) and np.all(np.diff(polished) >= 0):
        roots = polished
    return roots, slope


def band_edges(p, method="lapack"):
    """The ``2N`` roots of ``Delta^2 = 1`` in the order of the band chain.

    Eigenvalues of the periodic and antiperiodic matrices are merged and
    sorted; position 0 is ``lam_0^+``, the last is ``lam_N^-`` and interior
    roots pair up as ``(lam_n^-, lam_n^+)``. Each edge is checked against the
    sign ``Delta`` must take there.
    """
    return _band_edges(p, method)[0]


def _polish_roots(p, lam, which, pos, name):
    # one Newton step on the recurrence recovers the digits the eigensolver
    # loses to ||M||-relative rounding; the residual check uses the raw roots
    y = _run(p.a, p.b, lam, 1)
    f, fp = y[which, 0, pos], y[which, 1, pos]
    radius = float(np.max(np.abs(p.b)) + 2.0 * np.max(p.a))
    bound = RESIDUAL_TOL * value_scale(p, np.array([radius]))
    if np.any(np.abs(f) > bound):
        raise ResidualTooLarge(f"{name} residual {np.abs(f).max():.3e} exceeds {bound:.3e}")
    step = f / fp
    return np.where(np.abs(step) < 1e-8 * (1.0 + np.abs(lam)), lam - step, lam)


def dirichlet_eigenvalues(p, method="lapack"):
    """Zeros ``nu_1 < ... < nu_{N-1}`` of ``phi_N``."""
    lam = symmetric_eigenvalues(dirichlet_matrix(p), method)
    return _polish_roots(p, lam, 0, p.N, "phi_N")


def neumann_eigenvalues(p, method="lapack"):
    """Zeros ``mu_1 < ... < mu_{N-1}`` of ``theta_{N+1}``."""
    lam = symmetric_eigenvalues(neumann_matrix(p), method)
    return _polish_roots(p, lam, 1, p.N + 1, "theta_{N+1}")


def _dirichlet_neumann(p, method):
    nu = symmetric_eigenvalues(dirichlet_matrix(p), method)
    mu = symmetric_eigenvalues(neumann_matrix(p), method)
    N = p.N
    lam = np.concatenate([nu, mu])
    y = _run(p.a, p.b, lam, 1)
    f = np.concatenate([y[0, 0, N, : N - 1], y[1, 0, N + 1, N - 1 :]])
    fp = np.concatenate([y[0, 1, N, : N - 1], y[1, 1, N + 1, N - 1 :]])
    radius = float(np.max(np.abs(p.b)) + 2.0 * np.max(p.a))
    bound = RESIDUAL_TOL * value_scale(p, np.array([radius]))
    if np.any(np.abs(f) > bound):
        raise ResidualTooLarge(f"Dirichlet/Neumann residual {np.abs(f).max():.3e} exceeds {bound:.3e}")
    step = f / fp
    lam = np.where(np.abs(step) < 1e-8 * (1.0 + np.abs(lam)), lam - step, lam)
    return lam[: N - 1], lam[N - 1 :]


def closed_gaps(edges):
    lo, hi = edges[1:-1:2], edges[2:-1:2]
    return (hi - lo) <= CLOSED_GAP_TOL * lam_scale(edges)


def _hermite_guess(lo, hi, d_lo, d_hi):
    # stationary point of the cubic Hermite interpolant with equal end values
    h = hi - lo
    d0, d1 = d_lo * h, d_hi * h
    A, B, C = 3.0 * (d0 + d1), -(4.0 * d0 + 2.0 * d1), d0
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = np.sqrt(np.maximum(B * B - 4 * A * C, 0.0))
        # root of A t^2 + B t + C in (0, 1), written to avoid cancellation
        q = -0.5 * (B + np.copysign(disc, B))
        t1, t2 = q / A, C / q
        t = np.where((t1 > 0) & (t1 < 1), t1, t2)
        t = np.where(np.abs(A) < 1e-12 * np.abs(B), -C / B, t)
    t = np.where(np.isfinite(t) & (t > 0) & (t < 1), t, 0.5)
    return lo + t * h


def critical_points(p, edges, slopes=None, max_iter=200):
    """The stationary point ``lam_n`` of ``Delta`` in each gap closure.

    Closed gaps return the common edge value. Open gaps are solved by
    Newton's method on ``Delta'`` safeguarded by bisection, all gaps at once,
    starting from the stationary point of the Hermite cubic through the edges.
    """
    N = p.N
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[1:-1:2].copy(), edges[2:-1:2].copy()
    closed = closed_gaps(edges)
    crit = 0.5 * (lo + hi)
    crit[closed] = lo[closed]
    open_ = ~closed
    if not np.any(open_):
        return crit
    if slopes is None:
        slopes = discriminant_values(p, edges, 1)[1]
    s = gap_signs(N)[open_]
    lo, hi = lo[open_], hi[open_]
    vscale = value_scale(p, edges)
    lscale = lam_scale(edges)
    # s * Delta' runs from + at lam_n^- to - at lam_n^+
    d_lo = s * slopes[1:-1:2][open_]
    d_hi = s * slopes[2:-1:2][open_]
    noise = 1e-9 * vscale
    if np.any(d_lo < -noise) or np.any(d_hi > noise):
        raise BracketFailure("Delta' has no sign change on a gap; edge labels are wrong")
    x = _hermite_guess(lo, hi, d_lo, d_hi)
    done = np.zeros(x.shape, dtype=bool)
    for _ in range(max_iter):
        d = discriminant_values(p, x, 2)
        g, gp = s * d[1], s * d[2]
        lo = np.where(g > 0, x, lo)
        hi = np.where(g > 0, hi, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(g == 0, x, x - g / gp)
        ok = (newton >= lo) & (newton <= hi) & np.isfinite(newton)
        converged = ok & (np.abs(newton - x) <= 1e-14 * lscale)
        x_new = np.where(ok, newton, 0.5 * (lo + hi))
        x = np.where(done, x, x_new)
        done |= converged | (hi - lo <= 4e-16 * lscale)
        if np.all(done):
            break
    else:
        raise ConvergenceFailure("critical point iteration did not converge")
    # d was taken within one converged Newton step of x
    if np.any(np.abs(d[1]) > 1e-11 * np.abs(d[2]) * lscale + 1e-13 * vscale):
        raise ConvergenceFailure(f"Delta' = {d[1]} not small at critical points")
    crit[open_] = x
    return crit


def spectral_data(p, method="lapack"):
    """All landmarks; closed gaps snap every landmark to the shared edge."""
    edges, slopes = _band_edges(p, method)
    nu, mu = _dirichlet_neumann(p, method)
    closed = closed_gaps(edges)
    for n in np.flatnonzero(closed):
        v = 0.5 * (edges[2 * n + 1] + edges[2 * n + 2])
        edges[2 * n + 1] = edges[2 * n + 2] = v
        nu[n] = mu[n] = v
    crit = critical_points(p, edges, slopes)
    return SpectralData(edges, nu, mu, crit, closed)
