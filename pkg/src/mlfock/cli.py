"""Command-line entry point ``mlfock``.

Configuration precedence is command-line flags, then the JSON file named by
``MLFOCK_DEFAULTS``, then the built-in defaults of :class:`RunConfig`.
Exit status: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import io as mio
from .caputo import commutator_table, misprint_ledger, verify_conjecture
from .errors import InconclusiveError, MLFockError
from .fourier import resolve_sign
from .hermite import fit_samples
from .planar import build_planar_rule
from .report import RunConfig, run_report, section_quaternion
from .special import mittag_leffler
from .transform import mlb_forward_coeff, mlb_inverse, mlb_inverse_coeff

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2

DEFAULTS_ENV = "MLFOCK_DEFAULTS"

# flag dest -> RunConfig field
_FLAG_FIELDS = {
    "q": "q",
    "trunc": "truncation",
    "radial": "quad_radial",
    "angular": "quad_angular",
    "hermite_order": "hermite_order",
    "tol": "tolerance",
    "seed": "seed",
}


class UsageError(Exception):
    pass


def load_defaults(path: str | None) -> dict:
    """Read the defaults file; keys are :class:`RunConfig` field names."""
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read defaults file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"defaults file {path} must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown keys in defaults file: {sorted(unknown)}")
    return data


def build_config(args: argparse.Namespace, env: dict | None = None) -> RunConfig:
    env = os.environ if env is None else env
    values = load_defaults(env.get(DEFAULTS_ENV))
    for flag, name in _FLAG_FIELDS.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[name] = v
    try:
        return RunConfig(**values)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid configuration: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _is_csv(path: str, text: str) -> bool:
    return path.lower().endswith(".csv") or not text.lstrip().startswith(("{", "["))


def _check_budget(degree: int, cfg: RunConfig) -> None:
    if degree > cfg.truncation:
        raise UsageError(f"degree {degree} exceeds truncation {cfg.truncation}")


def cmd_transform(args: argparse.Namespace, cfg: RunConfig) -> int:
    """Hermite coefficients (JSON) or samples (CSV x,re,im) -> MLFockElement JSON."""
    text = _read_text(args.input)
    if _is_csv(args.input, text):
        x, values = mio.samples_from_csv(text)
        _check_budget(cfg.hermite_order, cfg)
        phi = fit_samples(x, values, cfg.hermite_order)
    else:
        phi = mio.expansion_from_dict(mio.loads(text))
        _check_budget(phi.degree, cfg)
    f = mlb_forward_coeff(phi, cfg.q.q)
    _emit(mio.dumps(mio.element_to_dict(f)), args.out)
    return EXIT_OK


def _grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) == 3:
        try:
            return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise UsageError(f"bad grid range {spec!r}, expected start:stop:count") from None
    x, _ = mio.samples_from_csv(_read_text(spec))
    return x


def cmd_inverse(args: argparse.Namespace, cfg: RunConfig) -> int:
    """MLFockElement JSON -> CSV of ``T_q f`` on a grid (coefficient route).

    With ``--check`` the planar-quadrature route is evaluated too; its largest
    deviation goes to stderr and exceeding the tolerance exits with status 1.
    """
    f = mio.element_from_dict(mio.loads(_read_text(args.input)))
    _check_budget(f.degree, cfg)
    x = _grid(args.grid)
    exact = mlb_inverse_coeff(f)(x)
    gap = None
    if args.check:
        rule = build_planar_rule(f.q, cfg.quad_radial, cfg.quad_angular)
        quad = mlb_inverse(f, x, rule, cfg.truncation)
        gap = float(np.max(np.abs(quad - exact))) if len(x) else 0.0
    _emit(mio.samples_to_csv(x, exact), args.out)
    if gap is not None:
        sys.stderr.write(f"max path discrepancy: {mio.format_float(gap)}\n")
        if gap > cfg.tolerance:
            return EXIT_VERIFY
    return EXIT_OK


def _parse_complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {s!r}") from None


def cmd_ml_eval(args: argparse.Namespace, cfg: RunConfig) -> int:
    rows = []
    for s in args.z:
        z = _parse_complex(s)
        r = mittag_leffler(cfg.q.q, z, cfg.tolerance)
        rows.append(
            {
                "z": [z.real, z.imag],
                "value": [r.value.real, r.value.imag],
                "terms_used": r.terms_used,
                "error_bound": r.error_bound,
            }
        )
    _emit(mio.dumps({"q": cfg.q.q, "tolerance": cfg.tolerance, "results": rows}), args.out)
    return EXIT_OK


def cmd_fourier_check(args: argparse.Namespace, cfg: RunConfig) -> int:
    """SignReport JSON; ``--check`` adds the full quadrature route."""
    try:
        out = {"coefficient": resolve_sign(cfg.q.q, args.trials, seed=cfg.seed).to_dict()}
        if args.check:
            out["numerical"] = resolve_sign(
                cfg.q.q, min(args.trials, 3), seed=cfg.seed, numerical=True
            ).to_dict()
    except InconclusiveError as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_VERIFY
    _emit(mio.dumps(out), args.out)
    return EXIT_OK


def cmd_commutator_table(args: argparse.Namespace, cfg: RunConfig) -> int:
    rows = commutator_table(args.orders, args.n_max)
    cols = ["q", "n", "beta_gamma", "beta_paper_formula_if_any", "match_flag"]
    _emit(mio.table_to_csv(rows, cols), args.out)
    for entry in misprint_ledger(args.n_max):
        sys.stderr.write(f"misprint: {entry['item']} (first mismatch n={entry['first_mismatch_n']})\n")
    return EXIT_OK


def cmd_conjecture(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.all:
        reports = [verify_conjecture(q, args.degree).to_dict() for q in range(1, 9)]
        _emit(mio.dumps(reports), args.out)
        return EXIT_OK
    if not cfg.q.is_integer:
        raise UsageError("conjecture needs an integer --q")
    _emit(mio.dumps(verify_conjecture(int(cfg.q.q), args.degree).to_dict()), args.out)
    return EXIT_OK


def cmd_quaternion_check(args: argparse.Namespace, cfg: RunConfig) -> int:
    section = section_quaternion(cfg, np.random.default_rng(cfg.seed))
    _emit(mio.dumps(section), args.out)
    return EXIT_OK if section["pass"] else EXIT_VERIFY


def cmd_report(args: argparse.Namespace, cfg: RunConfig) -> int:
    report = run_report(cfg)
    _emit(mio.dumps(report), args.out)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def _order_arg(s: str):
    v = float(s)
    return int(v) if v.is_integer() else v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, help="Mittag-Leffler order q > 0")
    common.add_argument("--trunc", type=int, help="kernel truncation degree")
    common.add_argument("--radial", type=int, help="radial order of the planar rule")
    common.add_argument("--angular", type=int, help="angular count of the planar rule")
    common.add_argument("--hermite-order", type=int, help="Gauss-Hermite order / projection degree")
    common.add_argument("--tol", type=float, help="verification tolerance")
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--check", action="store_true", help="also run the cross-check route")
    common.add_argument("--out", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="mlfock",
        description="Mittag-Leffler-Fock space transforms and verification reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="signal file -> MLFockElement JSON")
    p.add_argument("input")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("inverse", parents=[common], help="MLFockElement JSON -> CSV samples")
    p.add_argument("input")
    p.add_argument("--grid", required=True, help="CSV with an x column, or start:stop:count")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("ml-eval", parents=[common], help="evaluate E_q at points")
    p.add_argument("z", nargs="+", help="complex points, e.g. 1+2j")
    p.set_defaults(func=cmd_ml_eval)

    p = sub.add_parser("fourier-check", parents=[common], help="sign of the Fourier image")
    p.add_argument("--trials", type=int, default=8)
    p.set_defaults(func=cmd_fourier_check)

    p = sub.add_parser("commutator-table", parents=[common], help="beta table as CSV")
    p.add_argument("--orders", type=_order_arg, nargs="+", default=[1, 2, 3, 4])
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_commutator_table)

    p = sub.add_parser("conjecture", parents=[common], help="exact conjecture check")
    p.add_argument("--degree", type=int, default=15)
    p.add_argument("--all", action="store_true", help="run q = 1..8")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("quaternion-check", parents=[common], help="quaternionic suite")
    p.set_defaults(func=cmd_quaternion_check)

    p = sub.add_parser("report", parents=[common], help="full verification battery")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return args.func(args, cfg)
    except (UsageError, MLFockError) as exc:
        sys.stderr.write(f"mlfock: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
