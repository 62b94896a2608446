"""Command line front end.

Exit codes: 0 success, 1 a tolerance check failed, 2 usage error,
3 numerical failure. The default output format can be set with the
``GSN_OPTION_FORMAT`` environment variable (human, csv or json).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .analysis import (
    BENCHMARK,
    TABLE1_AXIS,
    TABLE1_REFERENCE,
    GridSpec,
    evaluate_grid,
    export,
)
from .errors import InvalidParameterError
from .gsn_dist import SkewParams
from .mc_oracle import MIN_PATHS, McConfig, estimate_call
from .pricer import MarketParams, call_price

FORMAT_ENV = "GSN_OPTION_FORMAT"
TABLE1_TOL = 1e-3
PARITY_TOL = 1e-12
Z_LIMIT = 3.0

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _axis(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _add_market(p, skew=True):
    p.add_argument("--s0", type=float, required=True, help="spot price S(0)")
    p.add_argument("--strike", type=float, required=True)
    p.add_argument("--rate", type=float, required=True, help="riskless continuous rate r")
    vol = p.add_mutually_exclusive_group(required=True)
    vol.add_argument("--sigma", type=float, help="volatility")
    vol.add_argument("--variance", type=float, help="return variance sigma^2")
    p.add_argument("--maturity", type=float, required=True, help="time to expiry t")
    if skew:
        p.add_argument("--lambda", dest="lam", type=float, required=True)
        p.add_argument("--gamma", dest="gam", type=float, required=True)


def _add_format(p, choices=("human", "csv", "json")):
    default = os.environ.get(FORMAT_ENV, "human")
    if default not in choices:
        default = "human"
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsn-option", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", help="closed-form call and put")
    _add_market(p)
    _add_format(p)

    p = sub.add_parser("grid", help="price a (lambda, gamma) grid")
    _add_market(p, skew=False)
    p.add_argument("--lambda-axis", type=_axis, default=TABLE1_AXIS, help="e.g. --lambda-axis=-1,0,1")
    p.add_argument("--gamma-axis", type=_axis, default=TABLE1_AXIS)
    _add_format(p, ("human", "csv", "json", "plotdata"))

    p = sub.add_parser("table1", help="reproduce the 5x5 benchmark table")
    _add_format(p)
    p.add_argument("--flip-correlation", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("mc", help="Monte Carlo check of the closed form")
    _add_market(p)
    p.add_argument("--paths", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--antithetic", action="store_true")
    _add_format(p)

    p = sub.add_parser("parity-check", help="verify P - C + S0 = K exp(-rt)")
    _add_market(p)
    _add_format(p)
    return parser


def _market(args) -> MarketParams:
    if args.variance is not None:
        return MarketParams.from_variance(args.s0, args.strike, args.rate, args.variance, args.maturity)
    return MarketParams(args.s0, args.strike, args.rate, args.sigma, args.maturity)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow(format(v, ".15g") if isinstance(v, float) else v for v in record.values())
    else:
        width = max(len(k) for k in record)
        for key, val in record.items():
            text = format(val, ".10g") if isinstance(val, float) else str(val)
            out.write(f"{key:<{width}}  {text}\n")


def run_price(args, out) -> int:
    m = _market(args)
    q = call_price(m, SkewParams(args.lam, args.gam))
    record = {"call": q.call, "put": q.put, "w": q.w, "mu_star": q.mu_star, "method": q.method.value}
    _emit_record(record, args.format, out)
    return EXIT_OK


def run_grid(args, out) -> int:
    spec = GridSpec(_market(args), args.lambda_axis, args.gamma_axis)
    result = evaluate_grid(spec)
    if args.format == "human":
        out.write(f"{'lambda':>8} {'gamma':>8} {'call':>14} {'put':>14}\n")
        for r in result.rows:
            note = f"  {r.error}" if r.error else ""
            out.write(f"{r.lam:>8g} {r.gam:>8g} {r.call:>14.7f} {r.put:>14.7f}{note}\n")
    else:
        out.write(export(result, args.format).decode())
    return EXIT_OK


def table1_rows(flip_correlation: bool = False) -> list:
    """(lambda, gamma, computed, reference, |deviation|) for the 25 benchmark cells."""
    rows = []
    for lam in TABLE1_AXIS:
        for gam in TABLE1_AXIS:
            c = call_price(BENCHMARK, SkewParams(lam, gam), _flip_correlation=flip_correlation).call
            ref = TABLE1_REFERENCE[(lam, gam)]
            rows.append((lam, gam, c, ref, abs(c - ref)))
    return rows


def run_table1(args, out) -> int:
    rows = table1_rows(args.flip_correlation)
    n_pass = sum(dev <= TABLE1_TOL for *_, dev in rows)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["lambda", "gamma", "computed", "reference", "abs_dev", "pass"])
        for lam, gam, c, ref, dev in rows:
            w.writerow([format(lam, "g"), format(gam, "g"), format(c, ".15g"), format(ref, ".15g"),
                        format(dev, ".15g"), int(dev <= TABLE1_TOL)])
    elif args.format == "json":
        doc = {
            "tolerance": TABLE1_TOL,
            "passed": n_pass,
            "cells": [
                {"lambda": lam, "gamma": gam, "computed": c, "reference": ref, "abs_dev": dev}
                for lam, gam, c, ref, dev in rows
            ],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        cells = {(lam, gam): (c, ref, dev) for lam, gam, c, ref, dev in rows}
        out.write("gamma\\lambda" + "".join(f"{lam:>24g}" for lam in TABLE1_AXIS) + "\n")
        for gam in TABLE1_AXIS:
            line = "".join(
                f"{cells[(lam, gam)][0]:>11.6f} ({cells[(lam, gam)][1]:>9.7g}){'' if cells[(lam, gam)][2] <= TABLE1_TOL else '!':1}"
                for lam in TABLE1_AXIS
            )
            out.write(f"{gam:>12g}{line}\n")
        worst = max(dev for *_, dev in rows)
        out.write(f"{n_pass}/{len(rows)} cells within {TABLE1_TOL:g} (max deviation {worst:.3g})\n")
    return EXIT_OK if n_pass == len(rows) else EXIT_FAIL


def run_mc(args, out) -> int:
    m = _market(args)
    s = SkewParams(args.lam, args.gam)
    est = estimate_call(m, s, McConfig(args.paths, args.seed, args.antithetic))
    closed = call_price(m, s).call
    z = est.z_score(closed)
    record = {
        "mc_mean": est.mean,
        "std_error": est.std_error,
        "closed_form": closed,
        "z": z,
        "paths": est.n_paths,
        "seed": est.seed_echo,
    }
    _emit_record(record, args.format, out)
    return EXIT_OK if abs(z) <= Z_LIMIT else EXIT_FAIL


def run_parity(args, out) -> int:
    m = _market(args)
    q = call_price(m, SkewParams(args.lam, args.gam))
    lhs = q.put - q.call + m.s0
    rhs = m.k * m.discount
    record = {"call": q.call, "put": q.put, "p_minus_c_plus_s0": lhs, "k_exp_minus_rt": rhs, "abs_diff": abs(lhs - rhs)}
    _emit_record(record, args.format, out)
    return EXIT_OK if abs(lhs - rhs) <= PARITY_TOL else EXIT_FAIL


_COMMANDS = {
    "price": run_price,
    "grid": run_grid,
    "table1": run_table1,
    "mc": run_mc,
    "parity-check": run_parity,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "mc" and args.paths < MIN_PATHS:
        parser.print_usage(sys.stderr)
        print(f"gsn-option: error: --paths must be >= {MIN_PATHS}", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    try:
        code = _COMMANDS[args.command](args, buf)
    except InvalidParameterError as exc:
        parser.print_usage(sys.stderr)
        print(f"gsn-option: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, OverflowError) as exc:
        print(f"gsn-option: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out.write(buf.getvalue())
    return code


def main_entry() -> None:
    sys.exit(main())
