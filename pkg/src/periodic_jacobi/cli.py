"""Command-line front end.

Subcommands::

    periodic-jacobi forward POTENTIAL.json
    periodic-jacobi inverse PSI.json [--tol T] [--max-steps K]
    periodic-jacobi verify --n N [--trials T] [--seed S] [--suite NAME]
    periodic-jacobi kappa POTENTIAL.json [--points-per-band P]

Exit codes: 0 success, 1 a verification threshold was missed, 2 bad input,
3 a numerical solver failed.
"""
import argparse
import json
import sys

import numpy as np

from .errors import HomotopyStalled, InputError, NumericalError
from .inverse import InverseOptions, solve_inverse
from .mo_map import mo_data
from .potential import Potential
from .quasimomentum import kappa_on_real_axis
from .spectrum import spectral_data
from .suites import SUITES, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise _Usage(f"malformed JSON in {path}: {exc}") from exc


def _field(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise _Usage(f"missing field {key!r}")
    value = obj[key]
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise _Usage(f"field {key!r} must be an integer")
        return value
    if not isinstance(value, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        raise _Usage(f"field {key!r} must be a list of numbers")
    return np.asarray(value, dtype=float)


def parse_potential(obj):
    """Build a :class:`Potential` from ``{"N", "x", "b"}``."""
    N = _field(obj, "N", int)
    x, b = _field(obj, "x", list), _field(obj, "b", list)
    if x.size != N or b.size != N:
        raise _Usage(f"DimensionMismatch: x and b must have length N={N}, got {x.size} and {b.size}")
    return Potential(x, b)


def _dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def _floats(a):
    return [float(v) + 0.0 for v in np.asarray(a, dtype=float)]


def forward_report(p):
    sd = spectral_data(p)
    md = mo_data(p, sd)
    return {
        "edges": _floats(sd.edges),
        "nu": _floats(sd.nu),
        "mu": _floats(sd.mu),
        "crit": _floats(sd.crit),
        "psi1": _floats(md.psi1),
        "psi2": _floats(md.psi2),
        "heights": _floats(md.height),
        "gap_closed": [bool(c) for c in sd.gap_closed],
    }


def potential_report(p):
    return {"N": p.N, "x": _floats(p.x), "b": _floats(p.b)}


def cmd_forward(args):
    p = parse_potential(_read_json(args.input))
    return _dumps(forward_report(p))


def cmd_inverse(args):
    obj = _read_json(args.input)
    N = _field(obj, "N", int)
    psi = _field(obj, "psi", list)
    if N < 2:
        raise _Usage(f"PeriodTooSmall: N={N} must be at least 2")
    if psi.size != 2 * N - 2:
        raise _Usage(f"DimensionMismatch: psi has length {psi.size}, expected {2 * N - 2}")
    try:
        steps = min(InverseOptions.homotopy_steps, args.max_steps)
        opts = InverseOptions(tol=args.tol, homotopy_steps=steps, max_homotopy_steps=args.max_steps)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    result = solve_inverse(psi, N, opts)
    if not result.residual <= args.tol:
        raise HomotopyStalled(
            f"final residual {result.residual:.3e} exceeds tol {args.tol:.3e}",
            path=result.homotopy_path,
            s=1.0,
        )
    return _dumps(potential_report(result.q))


def cmd_verify(args):
    if args.trials < 1:
        raise _Usage(f"--trials must be positive, got {args.trials}")
    report, passed = run_suites(args.n, args.trials, args.seed, args.suite)
    return _dumps(report), (EXIT_OK if passed else EXIT_VERIFY)


def cmd_kappa(args):
    p = parse_potential(_read_json(args.input))
    if args.points_per_band < 2:
        raise _Usage(f"--points-per-band must be at least 2, got {args.points_per_band}")
    lines = ["lambda,re_kappa,im_kappa_plus"]
    for k in kappa_on_real_axis(p, points_per_band=args.points_per_band):
        if k.im_kappa < 0:
            continue  # the -i0 bank mirrors the +i0 row
        lines.append(f"{k.lam + 0.0:.17g},{k.re_kappa + 0.0:.17g},{k.im_kappa + 0.0:.17g}")
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(prog="periodic-jacobi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fwd = sub.add_parser("forward", help="spectral and MO data of a potential")
    fwd.add_argument("input", help="potential JSON file, or - for stdin")
    fwd.set_defaults(func=cmd_forward)

    inv = sub.add_parser("inverse", help="recover a potential from its MO vector")
    inv.add_argument("input", help='JSON {"N": int, "psi": [...]}, or - for stdin')
    inv.add_argument("--tol", type=float, default=1e-10)
    inv.add_argument("--max-steps", type=int, default=256, help="cap on continuation steps")
    inv.set_defaults(func=cmd_inverse)

    ver = sub.add_parser("verify", help="randomised identity and gradient checks")
    ver.add_argument("--n", type=int, required=True, help="period N")
    ver.add_argument("--trials", type=int, default=20)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.set_defaults(func=cmd_verify)

    kap = sub.add_parser("kappa", help="quasimomentum samples as CSV")
    kap.add_argument("input", help="potential JSON file, or - for stdin")
    kap.add_argument("--points-per-band", type=int, default=16)
    kap.set_defaults(func=cmd_kappa)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out = args.func(args)
    except (_Usage, InputError) as exc:
        print(f"error: {type(exc).__name__ if isinstance(exc, InputError) else 'input'}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HomotopyStalled as exc:
        print(f"error: solver: {exc}", file=sys.stderr)
        print(json.dumps({"s": exc.s, "path": [list(step) for step in exc.path or []]}), file=sys.stderr)
        return EXIT_SOLVER
    except NumericalError as exc:
        print(f"error: solver: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    code = EXIT_OK
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
