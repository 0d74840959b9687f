"""Command-line interface: calibration, simulation, prediction, and rendering.

Every randomized command requires an explicit --seed, and every command is
deterministic given its full flag set. JSON goes to stdout (or --out); CSV
and PGM likewise. Validation problems exit with code 2 and one line on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import calibrate as _calibrate
from .grid import render_pgm
from .model import (
    ModelParams,
    Order,
    asymptotic_integral,
    estimate as model_estimate,
    invert_estimate,
    one_layer_H,
)
from .sim import reproduce_summary_table
from .targets import FieldConfig, place_uniform, rasterize_disk, stamp_all

__all__ = ["main"]


class CommandError(Exception):
    """Flag validation failure; rendered as one line on stderr, exit 2."""


def _parse_radius_range(text: str) -> range:
    if ":" in text:
        lo_text, _, hi_text = text.partition(":")
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise CommandError(f"bad radius range {text!r}; expected a:b with 1 <= a <= b")
    return range(lo, hi + 1)


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise CommandError(f"bad --n list {text!r}: {exc}") from None
    if not all(v >= 0 for v in values):
        raise CommandError("target counts must be >= 0")
    return values


def _field_config(args, n: int = 0, seed: int = 0) -> FieldConfig:
    try:
        return FieldConfig(
            length=args.length, width=args.width, radius=args.radius, n=n, seed=seed
        )
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _model_params(args) -> ModelParams:
    try:
        b_corr = (
            args.b_corr
            if getattr(args, "b_corr", None) is not None
            else _calibrate.corrected_b(args.radius, args.length, args.width, method=args.method)
        )
        c_flag = getattr(args, "c", "bcorr")
        if c_flag == "bcorr":
            c = b_corr
        elif c_flag == "second":
            c = _calibrate.second_order_c(args.radius)
        else:
            c = float(c_flag)
        return ModelParams.for_field(args.length, args.width, args.radius, b_corr, c)
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _emit_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit_bytes(blob: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(blob)
    else:
        Path(out).write_bytes(blob)


def _emit_json(record: dict, out: str | None) -> None:
    _emit_text(json.dumps(record, indent=1, sort_keys=True) + "\n", out)


def _cache_path(args) -> Path | None:
    return Path(args.cache_file) if args.cache_file else None


def _cmd_calibrate(args) -> None:
    result = _calibrate.calibrate_radius(
        args.radius,
        args.length,
        args.width,
        method=args.method,
        cache_path=_cache_path(args),
        use_cache=not args.no_cache,
    )
    _emit_json(result.to_json_dict(), args.out)


def _cmd_table(args) -> None:
    rows = ["radius,type0,type1,type3"]
    for r in _parse_radius_range(args.radii):
        t0, t1, t3 = _calibrate.error_type_counts(r)
        rows.append(f"{r},{t0},{t1},{t3}")
    _emit_text("\n".join(rows) + "\n", args.out)


def _cmd_simulate(args) -> None:
    n_values = _parse_n_list(args.n)
    config = _field_config(args, n=n_values[0] if n_values else 0, seed=args.seed)
    csv_text = reproduce_summary_table(
        n_values, config, trials=args.trials, master_seed=args.seed, workers=args.threads
    )
    _emit_text(csv_text, args.out)


def _cmd_predict(args) -> None:
    params = _model_params(args)
    order = Order.FIRST if args.order == 1 else Order.SECOND_CLOSED
    result = model_estimate(args.n, params, order)
    _emit_json(
        {
            "n": result.n,
            "expected_errors": result.expected_errors,
            "predicted_integral": result.predicted_integral,
        },
        args.out,
    )


def _cmd_estimate(args) -> None:
    params = _model_params(args)
    try:
        n_hat = invert_estimate(args.observed, params)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    _emit_json({"n_hat_real": n_hat, "n_hat_int": round(n_hat)}, args.out)


def _cmd_render(args) -> None:
    config = _field_config(args, n=args.n, seed=args.seed)
    rng = np.random.default_rng(np.random.SeedSequence((args.seed, 0)))
    field = config.empty_field()
    template = rasterize_disk(config.radius)
    stamp_all(field, template, place_uniform(config, rng))
    _emit_bytes(render_pgm(field), args.out)


def _cmd_asymptotic(args) -> None:
    config = _field_config(args)
    template = rasterize_disk(config.radius)
    H = one_layer_H(config.length, config.width, template)
    _emit_json(
        {
            "length": config.length,
            "width": config.width,
            "radius": config.radius,
            "m": args.m,
            "H": H,
            "asymptotic_integral": asymptotic_integral(args.m, H),
        },
        args.out,
    )


def _add_field_flags(parser, with_radius: bool = True) -> None:
    parser.add_argument("--length", type=int, required=True, help="sensor grid x extent")
    parser.add_argument("--width", type=int, required=True, help="sensor grid y extent")
    if with_radius:
        parser.add_argument("--radius", type=int, required=True, help="disk radius")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulercount",
        description="Target counting on discrete sensor grids via Euler characteristic integrals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="all constants for one radius and field size")
    p.add_argument("--radius", type=int, required=True)
    _add_field_flags(p, with_radius=False)
    p.add_argument("--method", choices=["exact", "paper_weighted"], default="exact")
    p.add_argument("--cache-file", default=None, help="JSON cache path")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("table", help="error-type position counts for a radius range")
    p.add_argument("--radii", required=True, help="inclusive range a:b, e.g. 1:12")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("simulate", help="Monte Carlo table: observed mean vs formulas")
    _add_field_flags(p)
    p.add_argument("--n", required=True, help="target counts, comma separated")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("predict", help="expected integral for a known target count")
    p.add_argument("--n", type=float, required=True)
    _add_field_flags(p)
    p.add_argument("--order", type=int, choices=[1, 2], default=2)
    p.add_argument("--c", default="bcorr", help="second|bcorr|<float>")
    p.add_argument("--b-corr", type=float, default=None, help="override calibrated b_corrected")
    p.add_argument("--method", choices=["exact", "paper_weighted"], default="exact")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("estimate", help="invert an observed integral into a count estimate")
    p.add_argument("--observed", type=float, required=True)
    _add_field_flags(p)
    p.add_argument("--c", default="bcorr", help="second|bcorr|<float>")
    p.add_argument("--b-corr", type=float, default=None)
    p.add_argument("--method", choices=["exact", "paper_weighted"], default="exact")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("render", help="simulate one field and write a PGM image")
    _add_field_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("asymptotic", help="one-layer integral H and the H*m limit")
    _add_field_flags(p)
    p.add_argument("--m", type=int, required=True, help="number of full layers")
    p.set_defaults(func=_cmd_asymptotic)
    p.add_argument("--out", default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (CommandError, ValueError) as exc:
        print(f"eulercount: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
