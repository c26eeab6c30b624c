"""Points of the sum-zero coefficient space and a chart onto free coordinates.

A potential is the pair ``(x, b)`` of real ``N``-periodic sequences with
``sum(x) == sum(b) == 0``; the off-diagonal of the Jacobi matrix is
``a = exp(x)``. Arrays are stored 0-based, so ``x[0]`` is ``x_1`` and
``x[N-1]`` is ``x_N``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, PeriodTooSmall, SumNotZero

SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Potential:
    x: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float).reshape(-1)
        b = np.array(self.b, dtype=float).reshape(-1)
        if x.shape != b.shape:
            raise DimensionMismatch(f"x has length {x.size}, b has length {b.size}")
        x.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "b", b)
        validate(self)

    @property
    def N(self):
        return self.x.size

    @property
    def a(self):
        return np.exp(self.x)

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.b, other.b)

    def __repr__(self):
        return f"Potential(N={self.N}, x={self.x.tolist()}, b={self.b.tolist()})"

    @classmethod
    def zero(cls, N):
        return cls(np.zeros(N), np.zeros(N))


def validate(p):
    """Check the period and both sum-zero constraints.

    Raises
    ------
    PeriodTooSmall
        If ``N < 2``.
    SumNotZero
        If ``|sum(x)|`` or ``|sum(b)|`` exceeds ``1e-12 * N``.
    """
    N = p.x.size
    if N < 2:
        raise PeriodTooSmall(f"period N={N} must be at least 2")
    tol = SUM_TOL * N
    sx, sb = float(np.sum(p.x)), float(np.sum(p.b))
    if abs(sx) > tol:
        raise SumNotZero(f"sum(x) = {sx:.3e} is not zero (tolerance {tol:.1e})")
    if abs(sb) > tol:
        raise SumNotZero(f"sum(b) = {sb:.3e} is not zero (tolerance {tol:.1e})")


def embed(u, N):
    """Map free coordinates ``u`` (length ``2N-2``) to a :class:`Potential`.

    The first ``N-1`` entries are ``x_1..x_{N-1}``, the rest ``b_1..b_{N-1}``;
    ``x_N`` and ``b_N`` are fixed by the sum-zero constraint.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    if N < 2:
        raise PeriodTooSmall(f"period N={N} must be at least 2")
    if u.size != 2 * N - 2:
        raise DimensionMismatch(f"expected {2 * N - 2} free coordinates, got {u.size}")
    ux, ub = u[: N - 1], u[N - 1 :]
    x = np.append(ux, 0.0 - ux.sum())
    b = np.append(ub, 0.0 - ub.sum())
    return Potential(x, b)


def project(p):
    """Inverse of :func:`embed`: drop ``x_N`` and ``b_N``."""
    return np.concatenate([p.x[:-1], p.b[:-1]])


def random_potential(N, scale=1.0, seed=0):
    """Uniform draw in ``[-scale, scale]`` per entry, then mean-subtracted."""
    if N < 2:
        raise PeriodTooSmall(f"period N={N} must be at least 2")
    rng = np.random.default_rng(seed)
    x = rng.uniform(-scale, scale, N)
    b = rng.uniform(-scale, scale, N)
    return Potential(x - x.mean(), b - b.mean())


def project_gradient(field):
    """Pull a full gradient field back to free-coordinate directions.

    ``field`` has shape ``(..., N, 2)`` with columns ``(d/dx_k, d/db_k)``. The
    chart makes ``x_N`` and ``b_N`` dependent, so the derivative along
    ``u_k`` is ``d/dx_k - d/dx_N`` (and likewise for ``b``).
    """
    field = np.asarray(field, dtype=float)
    gx = field[..., :-1, 0] - field[..., -1:, 0]
    gb = field[..., :-1, 1] - field[..., -1:, 1]
    return np.concatenate([gx, gb], axis=-1)
