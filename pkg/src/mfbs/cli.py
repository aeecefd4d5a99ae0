"""Command-line interface.

Subcommands: ``price`` a single option, ``curve`` a coupling sweep as CSV,
``density`` a tabulated density as CSV, ``validate`` the oracle/invariant
battery, and ``calibrate`` an implied force parameter.

Option defaults are S0=20, K=20, r=0.10, sigma=0.25, T=1, call; environment
variables MFBS_S0, MFBS_STRIKE, MFBS_RATE, MFBS_SIGMA, MFBS_MATURITY override
the defaults, and flags override both.  Exit codes: 0 success, 1 domain or
numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

import numpy as np

from .calibration import CalibrationError, CalibrationRequest, implied_param
from .densities import (
    Baseline,
    ConstantForce,
    CubicPotential,
    ForceModel,
    GuardError,
    LinearForce,
    PolynomialPerturbation,
    QuantumWell,
    QuarticPotential,
    build_density,
)
from .oracle import OracleError
from .pricing import OptionSpec, price
from .quadrature import QuadratureConfig, QuadratureError
from .validation import run_battery, run_family_check

__all__ = ["main"]

CURVE_HEADER = "param,price,sigma_qm,sigma_eff,n_dplus,n_dminus"

_ENV_DEFAULTS = (
    ("MFBS_S0", "s0", 20.0),
    ("MFBS_STRIKE", "strike", 20.0),
    ("MFBS_RATE", "rate", 0.10),
    ("MFBS_SIGMA", "sigma", 0.25),
    ("MFBS_MATURITY", "maturity", 1.0),
)

_COUPLING_FLAG = {
    "constant": "k",
    "linear": "lam",
    "cubic": "beta",
    "quartic": "gamma",
    "well": "a",
    "poly": "poly",
}


class _UsageError(Exception):
    pass


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text!r}")
    return value


def _env_defaults() -> dict[str, float]:
    out = {}
    for env_name, attr, fallback in _ENV_DEFAULTS:
        raw = os.environ.get(env_name)
        if raw is None or raw == "":
            out[attr] = fallback
            continue
        try:
            value = float(raw)
        except ValueError:
            raise _UsageError(f"environment variable {env_name} is not a number: {raw!r}")
        if not math.isfinite(value):
            raise _UsageError(f"environment variable {env_name} must be finite, got {raw!r}")
        out[attr] = value
    return out


def _option_parent(defaults: dict[str, float]) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--s0", type=_finite_float, default=defaults["s0"], help="spot price")
    p.add_argument("--strike", type=_finite_float, default=defaults["strike"], help="strike")
    p.add_argument("--rate", type=_finite_float, default=defaults["rate"], help="risk-free rate")
    p.add_argument("--sigma", type=_finite_float, default=defaults["sigma"], help="volatility")
    p.add_argument(
        "--maturity", type=_finite_float, default=defaults["maturity"], help="maturity in years"
    )
    p.add_argument("--kind", choices=("call", "put"), default="call")
    return p


def _model_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--model",
        choices=("baseline", "constant", "linear", "cubic", "quartic", "well", "poly"),
        default="baseline",
    )
    p.add_argument("--k", type=_finite_float, default=None, help="constant-force strength")
    p.add_argument(
        "--lambda", dest="lam", type=_finite_float, default=None, help="linear-force strength"
    )
    p.add_argument("--beta", type=_finite_float, default=None, help="cubic-potential coupling")
    p.add_argument("--gamma", type=_finite_float, default=None, help="quartic-potential coupling")
    p.add_argument("--a", type=_finite_float, default=None, help="well half-width")
    p.add_argument(
        "--poly", default=None, help="polynomial perturbation as power:coupling[,power:coupling...]"
    )
    return p


def _quad_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--abs-tol", type=_finite_float, default=1e-10)
    p.add_argument("--rel-tol", type=_finite_float, default=1e-9)
    p.add_argument("--tail-cutoff", type=_finite_float, default=12.0)
    p.add_argument("--max-subdivisions", type=int, default=60)
    return p


def _quad_config(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(
            abs_tol=args.abs_tol,
            rel_tol=args.rel_tol,
            tail_cutoff=args.tail_cutoff,
            max_subdivisions=args.max_subdivisions,
        )
    except ValueError as exc:
        raise _UsageError(str(exc))


def _parse_poly(text: str) -> tuple[tuple[int, float], ...]:
    pairs = []
    for chunk in text.split(","):
        try:
            power_text, coeff_text = chunk.split(":")
            pairs.append((int(power_text), float(coeff_text)))
        except ValueError:
            raise _UsageError(f"cannot parse polynomial term {chunk!r}; expected power:coupling")
    return tuple(pairs)


def _build_model(args) -> ForceModel:
    provided = {
        flag for flag in ("k", "lam", "beta", "gamma", "a", "poly") if getattr(args, flag) is not None
    }
    expected = _COUPLING_FLAG.get(args.model)
    stray = provided - ({expected} if expected else set())
    if stray:
        raise _UsageError(
            f"flags {sorted('--' + s for s in stray)} do not belong to model {args.model!r}"
        )
    if args.model == "baseline":
        return Baseline()
    if expected not in provided:
        raise _UsageError(f"model {args.model!r} requires --{expected}")
    if args.model == "constant":
        return ConstantForce(args.k)
    if args.model == "linear":
        return LinearForce(args.lam)
    if args.model == "cubic":
        return CubicPotential(args.beta)
    if args.model == "quartic":
        return QuarticPotential(args.gamma)
    if args.model == "well":
        return QuantumWell(args.a)
    return PolynomialPerturbation(_parse_poly(args.poly))


def _model_with_param(args, value: float) -> ForceModel:
    builders = {
        "constant": ConstantForce,
        "linear": LinearForce,
        "cubic": CubicPotential,
        "quartic": QuarticPotential,
        "well": QuantumWell,
    }
    if args.model not in builders:
        raise _UsageError(f"model {args.model!r} has no sweepable coupling")
    return builders[args.model](value)


def _option_spec(args) -> OptionSpec:
    return OptionSpec(
        s0=args.s0,
        strike=args.strike,
        rate=args.rate,
        sigma=args.sigma,
        maturity=args.maturity,
        kind=args.kind,
    )


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_price(args) -> int:
    result = price(_build_model(args), _option_spec(args), _quad_config(args))
    fields = (
        ("price", result.price),
        ("sigma_qm", result.sigma_qm),
        ("sigma_eff", result.sigma_eff),
        ("d_plus", result.d_plus),
        ("d_minus", result.d_minus),
        ("n_d_plus", result.n_d_plus),
        ("n_d_minus", result.n_d_minus),
        ("normalization_c", result.normalization_c),
    )
    if args.format == "csv":
        _write_lines(None, [
            ",".join(name for name, _ in fields),
            ",".join(f"{value:.6f}" for _, value in fields),
        ])
    else:
        _write_lines(None, [f"{name} {value:.6f}" for name, value in fields])
    return 0


def _cmd_curve(args) -> int:
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    cfg = _quad_config(args)
    spec = _option_spec(args)
    # pre-check the range endpoints against the family guards
    for endpoint in (args.param_min, args.param_max):
        build_density(_model_with_param(args, endpoint), cfg)
    grid = np.linspace(args.param_min, args.param_max, args.steps)
    lines = [CURVE_HEADER]
    failures = []
    for p in grid:
        try:
            r = price(_model_with_param(args, float(p)), spec, cfg)
        except Exception as exc:
            failures.append(f"param {p!r}: {exc}")
            continue
        lines.append(
            f"{p:.10g},{r.price:.10g},{r.sigma_qm:.10g},{r.sigma_eff:.10g},"
            f"{r.n_d_plus:.10g},{r.n_d_minus:.10g}"
        )
    _write_lines(args.out, lines)
    if failures:
        for f in failures:
            print(f"error: {f}", file=sys.stderr)
        return 1
    return 0


def _cmd_density(args) -> int:
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    if not args.x_min < args.x_max:
        raise _UsageError(f"need --x-min < --x-max, got {args.x_min}, {args.x_max}")
    d = build_density(_build_model(args), _quad_config(args))
    xs = np.linspace(args.x_min, args.x_max, args.steps)
    ps = d.pdf(xs)
    lines = ["x,p"] + [f"{x:.10g},{p:.10g}" for x, p in zip(xs, ps)]
    _write_lines(args.out, lines)
    return 0


def _cmd_validate(args) -> int:
    if args.family is not None or args.coupling is not None:
        if args.family is None or args.coupling is None:
            raise _UsageError("--family and --coupling must be given together")
        results = run_family_check(args.family, args.coupling)
    else:
        if args.grid_points < 801 or args.grid_points % 2 == 0:
            raise _UsageError(f"--grid-points must be odd and >= 801, got {args.grid_points}")
        results = run_battery(grid_points=args.grid_points)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def _cmd_calibrate(args) -> int:
    builders = {
        "constant": ConstantForce,
        "linear": LinearForce,
        "cubic": CubicPotential,
        "quartic": QuarticPotential,
        "well": QuantumWell,
    }
    if args.model not in builders:
        raise _UsageError(f"model {args.model!r} cannot be calibrated")
    req = CalibrationRequest(
        family=builders[args.model],
        spec=_option_spec(args),
        target_price=args.target,
        bracket=(args.lo, args.hi),
        tol=args.tol,
    )
    value = implied_param(req, _quad_config(args))
    print(f"{value:.8f}")
    return 0


def _parser(defaults: dict[str, float]) -> argparse.ArgumentParser:
    option_parent = _option_parent(defaults)
    model_parent = _model_parent()
    quad_parent = _quad_parent()

    parser = argparse.ArgumentParser(prog="mfbs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_price = sub.add_parser(
        "price", parents=[option_parent, model_parent, quad_parent], help="price one option"
    )
    p_price.add_argument("--format", choices=("plain", "csv"), default="plain")
    p_price.set_defaults(func=_cmd_price)

    p_curve = sub.add_parser(
        "curve",
        parents=[option_parent, model_parent, quad_parent],
        help="sweep the model coupling and emit CSV",
    )
    p_curve.add_argument("--param-min", type=_finite_float, required=True)
    p_curve.add_argument("--param-max", type=_finite_float, required=True)
    p_curve.add_argument("--steps", type=int, required=True)
    p_curve.add_argument("--out", default=None)
    p_curve.set_defaults(func=_cmd_curve)

    p_density = sub.add_parser(
        "density",
        parents=[model_parent, quad_parent],
        help="tabulate the normalized density as CSV",
    )
    p_density.add_argument("--x-min", type=_finite_float, required=True)
    p_density.add_argument("--x-max", type=_finite_float, required=True)
    p_density.add_argument("--steps", type=int, required=True)
    p_density.add_argument("--out", default=None)
    p_density.set_defaults(func=_cmd_density)

    p_validate = sub.add_parser("validate", help="run the oracle and invariant battery")
    p_validate.add_argument("--grid-points", type=int, default=4001)
    p_validate.add_argument("--family", choices=tuple(sorted(set(_COUPLING_FLAG) - {"poly"})))
    p_validate.add_argument("--coupling", type=_finite_float, default=None)
    p_validate.set_defaults(func=_cmd_validate)

    p_cal = sub.add_parser(
        "calibrate",
        parents=[option_parent, model_parent, quad_parent],
        help="solve for the coupling matching a target price",
    )
    p_cal.add_argument("--target", type=_finite_float, required=True)
    p_cal.add_argument("--lo", type=_finite_float, required=True)
    p_cal.add_argument("--hi", type=_finite_float, required=True)
    p_cal.add_argument("--tol", type=_finite_float, default=1e-8)
    p_cal.set_defaults(func=_cmd_calibrate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        defaults = _env_defaults()
        parser = _parser(defaults)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (GuardError, CalibrationError, OracleError, QuadratureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
