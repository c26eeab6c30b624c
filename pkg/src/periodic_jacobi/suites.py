"""Randomised residual suites behind ``periodic-jacobi verify``.

Each suite draws ``trials`` potentials of period ``N`` from a seeded
generator and returns the largest residual it saw next to its threshold.
"""
import numpy as np

from .gradients import (
    grad_lambda_crit,
    grad_nu,
    grad_psi1,
    grad_xi,
    mo_jacobian,
    verify_basis,
    verify_identities,
)
from .errors import PeriodTooSmall
from .mo_map import mo_data, mo_map
from .potential import embed, project, project_gradient, random_potential
from .quasimomentum import verify_estimates
from .recurrence import evaluate_solutions, wronskian_sequence
from .spectrum import spectral_data

SUITES = ("wronskian", "lemma31", "theorem13", "gradcheck", "estimates")
FD_STEP = 1e-6
SCALE = 0.5
PARTIAL_SUMS = ("phi_", "theta_")


def _potentials(N, trials, seed):
    for k in range(trials):
        yield random_potential(N, SCALE, seed * 100003 + k)


def _entry(residual, threshold, **extra):
    return {"max_residual": float(residual), "threshold": threshold, "pass": bool(residual <= threshold), **extra}


def wronskian_suite(N, trials, seed):
    rng = np.random.default_rng(seed)
    worst_k = worst_det = 0.0
    for p in _potentials(N, trials, seed):
        edges = spectral_data(p).edges
        lam = rng.uniform(edges[0], edges[-1])
        t = evaluate_solutions(p, lam)
        aN = p.a[-1]
        w = wronskian_sequence(p, t.theta, t.phi)
        worst_k = max(worst_k, float(np.max(np.abs(w - aN))) / max(1.0, aN))
        det = t.phi[N + 1] * t.theta[N] - t.phi[N] * t.theta[N + 1]
        worst_det = max(worst_det, abs(det - 1.0))
    return {
        "constancy": _entry(worst_k, 1e-9),
        "identity": _entry(worst_det, 1e-9),
    }


def lemma31_suite(N, trials, seed):
    worst = 0.0
    for k, p in enumerate(_potentials(N, trials, seed)):
        sd = spectral_data(p)
        for n in range(1, N):
            for m in range(1, N):
                for name, (res, scale) in verify_identities(p, n, m, sd, seed=k).items():
                    if name.startswith(PARTIAL_SUMS):
                        worst = max(worst, res / scale)
    return {"relative": _entry(worst, 1e-8)}


def theorem13_suite(N, trials, seed):
    pairing = 0.0
    sigma = np.inf
    for p in _potentials(N, trials, seed):
        r = verify_basis(p)
        pairing = max(pairing, r.max_pairing)
        sigma = min(sigma, r.relative_sigma)
    return {
        "pairing": _entry(pairing, 1e-7),
        "basis": {"min_relative_sigma": float(sigma), "threshold": 1e-10, "pass": bool(sigma > 1e-10)},
    }


def _fd_landmarks(p, h=FD_STEP):
    """Central differences of ``(nu, psi1, crit, xi)`` along free coordinates."""
    u = project(p)
    cols = []
    for c in range(u.size):
        e = np.zeros_like(u)
        e[c] = h
        vals = []
        for q in (embed(u + e, p.N), embed(u - e, p.N)):
            sd = spectral_data(q)
            md = mo_data(q, sd)
            vals.append(np.stack([sd.nu, md.psi1, sd.crit, md.xi]))
        cols.append((vals[0] - vals[1]) / (2 * h))
    return np.stack(cols, axis=-1)


def relative_error(analytic, reference):
    """``||A - F||_F / max(||F||_F, 1)``; the floor keeps vanishing gradients from dividing noise by noise."""
    return float(np.linalg.norm(analytic - reference) / max(np.linalg.norm(reference), 1.0))


def gradient_errors(p):
    """Relative FD errors for each analytic gradient of ``p``."""
    N = p.N
    sd = spectral_data(p)
    fd = _fd_landmarks(p)
    gaps = range(1, N)
    analytic = {
        "grad_nu": [grad_nu(p, n, sd) for n in gaps],
        "grad_psi1": [grad_psi1(p, n, sd) for n in gaps],
        "grad_lambda_crit": [grad_lambda_crit(p, n, sd) for n in gaps],
        "grad_xi": [grad_xi(p, n, sd) for n in gaps],
    }
    out = {}
    for row, (name, fields) in enumerate(analytic.items()):
        out[name] = relative_error(project_gradient(np.stack(fields)), fd[row])
    u = project(p)
    J = mo_jacobian(p, sd)
    J_fd = np.empty_like(J)
    for c in range(u.size):
        e = np.zeros_like(u)
        e[c] = FD_STEP
        J_fd[:, c] = (mo_map(embed(u + e, N)) - mo_map(embed(u - e, N))) / (2 * FD_STEP)
    out["mo_jacobian"] = relative_error(J, J_fd)
    return out


def gradcheck_suite(N, trials, seed):
    worst = {}
    for p in _potentials(N, trials, seed):
        for name, err in gradient_errors(p).items():
            worst[name] = max(worst.get(name, 0.0), err)
    return {name: _entry(err, 1e-5) for name, err in worst.items()}


def estimates_suite(N, trials, seed):
    worst = 0.0
    equalities = 0
    for p in _potentials(N, trials, seed):
        r = verify_estimates(p)
        worst = max(worst, float(np.max(-r.margins)))
        equalities += len(r.equalities)
    return {"chain": _entry(max(worst, 0.0), 1e-9, equalities=equalities)}


_RUNNERS = {
    "wronskian": wronskian_suite,
    "lemma31": lemma31_suite,
    "theorem13": theorem13_suite,
    "gradcheck": gradcheck_suite,
    "estimates": estimates_suite,
}


def run_suites(N, trials, seed, suite="all"):
    """Run one suite or all of them; returns ``(report, passed)``."""
    if N < 2:
        raise PeriodTooSmall(f"period N={N} must be at least 2")
    if trials < 1:
        raise ValueError(f"trials={trials} must be positive")
    names = SUITES if suite == "all" else (suite,)
    report = {"N": N, "trials": trials, "seed": seed, "suites": {}}
    passed = True
    for name in names:
        result = _RUNNERS[name](N, trials, seed)
        report["suites"][name] = result
        passed &= all(v["pass"] for v in result.values())
    report["pass"] = bool(passed)
    return report, bool(passed)
