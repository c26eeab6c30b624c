"""Recover a potential from its MO data by Newton continuation.

The solver starts from the zero potential (whose MO data vanish) and tracks
the targets ``s * psi_target`` for ``s`` climbing from 0 to 1. Each leg is a
damped Newton iteration on the free coordinates, warm-started from the
previous leg. If a leg fails the step in ``s`` is halved; the solver gives up
with :class:`HomotopyStalled` once the step count would exceed the cap.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, HomotopyStalled, NumericalError, PeriodTooSmall
from .gradients import mo_jacobian
from .mo_map import mo_map
from .potential import Potential, embed, project
from .spectrum import spectral_data

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class InverseOptions:
    tol: float = 1e-10
    max_newton: int = 50
    homotopy_steps: int = 8
    max_homotopy_steps: int = 256
    backtrack: float = 0.5
    min_step: float = 2.0**-30

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_newton < 1:
            raise ValueError("max_newton must be at least 1")
        if self.homotopy_steps < 1:
            raise ValueError("homotopy_steps must be at least 1")
        if self.max_homotopy_steps < self.homotopy_steps:
            raise ValueError("max_homotopy_steps must be at least homotopy_steps")


@dataclass
class InverseResult:
    q: Potential
    residual: float
    newton_iterations: int
    homotopy_path: list = field(default_factory=list)


def _evaluate(u, N):
    p = embed(u, N)
    sd = spectral_data(p)
    return p, sd, mo_map(p, sd)


class _LegFailed(Exception):
    pass


def _newton_leg(u, N, target, opts, counter):
    """Damped Newton from ``u`` to ``psi(u) = target``; returns ``(u, residual)``."""
    p, sd, psi = _evaluate(u, N)
    r = psi - target
    res = np.max(np.abs(r))
    for _ in range(opts.max_newton):
        if res <= opts.tol:
            return u, res
        counter[0] += 1
        try:
            J = mo_jacobian(p, sd)
            delta = np.linalg.solve(J, -r)
        except (NumericalError, np.linalg.LinAlgError) as exc:
            raise _LegFailed(str(exc)) from exc
        alpha = 1.0
        while alpha >= opts.min_step:
            u_try = u + alpha * delta
            try:
                p_try, sd_try, psi_try = _evaluate(u_try, N)
            except NumericalError:
                alpha *= opts.backtrack
                continue
            r_try = psi_try - target
            res_try = np.max(np.abs(r_try))
            if res_try < res:
                break
            alpha *= opts.backtrack
        else:
            raise _LegFailed(f"line search failed at residual {res:.3e}")
        u, p, sd, r, res = u_try, p_try, sd_try, r_try, res_try
    if res <= opts.tol:
        return u, res
    raise _LegFailed(f"no convergence in {opts.max_newton} Newton steps (residual {res:.3e})")


def solve_inverse(target, N, opts=None):
    """Find the potential whose MO vector equals ``target``.

    Parameters
    ----------
    target : array_like, length ``2N-2``
        Interleaved ``(psi1_1, psi2_1, psi1_2, ...)``.
    N : int
    opts : InverseOptions, optional

    Returns
    -------
    InverseResult

    Raises
    ------
    DimensionMismatch
        If ``target`` has the wrong length.
    HomotopyStalled
        If a continuation step cannot be completed even at the finest step.
    """
    opts = opts or InverseOptions()
    if N < 2:
        raise PeriodTooSmall(f"period N={N} must be at least 2")
    target = np.asarray(target, dtype=float).reshape(-1)
    if target.size != 2 * N - 2:
        raise DimensionMismatch(f"target has length {target.size}, expected {2 * N - 2}")

    u = np.zeros(2 * N - 2)
    res = float(np.max(np.abs(target), initial=0.0))  # psi(0) = 0
    path = [(0.0, res)]
    counter = [0]
    if res <= opts.tol:
        return InverseResult(embed(u, N), res, 0, path)

    s, steps = 0.0, opts.homotopy_steps
    while s < 1.0:
        s_next = min(1.0, s + 1.0 / steps)
        try:
            u_next, leg_res = _newton_leg(u, N, s_next * target, opts, counter)
        except _LegFailed as exc:
            steps *= 2
            log.debug("leg to s=%.6g failed (%s); %d steps", s_next, exc, steps)
            if steps > opts.max_homotopy_steps:
                raise HomotopyStalled(
                    f"continuation stalled at s={s:.6g}: {exc}", path=path, s=s
                ) from exc
            continue
        u, s = u_next, s_next
        path.append((s, float(leg_res)))
    final = mo_map(embed(u, N)) - target
    return InverseResult(embed(u, N), float(np.max(np.abs(final))), counter[0], path)


def roundtrip_check(p, opts=None):
    """``||p - solve_inverse(psi(p))||_inf`` in free coordinates."""
    result = solve_inverse(mo_map(p), p.N, opts)
    return float(np.max(np.abs(project(p) - project(result.q)), initial=0.0))
