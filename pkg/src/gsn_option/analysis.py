"""Parameter sweeps over (lambda, gamma), sensitivities and serialization."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import InvalidParameterError
from .gsn_dist import SkewParams
from .pricer import MarketParams, black_scholes_price, call_price

__all__ = [
    "BENCHMARK",
    "TABLE1_AXIS",
    "TABLE1_REFERENCE",
    "GridSpec",
    "GridRow",
    "GridResult",
    "table1_spec",
    "evaluate_grid",
    "numerical_sensitivity",
    "monotonicity_report",
    "export",
    "write",
    "read_csv",
]

BENCHMARK = MarketParams.from_variance(100.0, 100.0, 0.1, 0.4, 0.25)
TABLE1_AXIS = (-2.0, -1.0, 0.0, 1.0, 2.0)
# Reference call prices at BENCHMARK, keyed by (lambda, gamma).
_TABLE1_ROWS = {
    -2.0: (8.702112, 10.69672, 13.68113, 10.75255, 8.857459),
    -1.0: (9.188333, 10.99278, 13.68113, 11.08288, 9.406439),
    0.0: (9.805336, 11.45179, 13.68113, 11.59007, 10.09846),
    1.0: (10.55043, 12.09882, 13.68113, 12.27943, 10.91346),
    2.0: (11.37726, 12.8264, 13.68113, 12.99414, 11.7723),
}
TABLE1_REFERENCE = {
    (lam, gam): value
    for gam, row in _TABLE1_ROWS.items()
    for lam, value in zip(TABLE1_AXIS, row)
}

CSV_FIELDS = ("lambda", "gamma", "call", "put", "w", "mu_star")


def _check_axis(name, axis):
    axis = tuple(float(v) for v in axis)
    if not axis:
        raise InvalidParameterError(f"{name} is empty")
    if not all(math.isfinite(v) for v in axis):
        raise InvalidParameterError(f"{name} has non-finite entries")
    if any(b <= a for a, b in zip(axis, axis[1:])):
        raise InvalidParameterError(f"{name} must be strictly increasing")
    return axis


@dataclass(frozen=True)
class GridSpec:
    market: MarketParams
    lambda_axis: tuple
    gamma_axis: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambda_axis", _check_axis("lambda_axis", self.lambda_axis))
        object.__setattr__(self, "gamma_axis", _check_axis("gamma_axis", self.gamma_axis))

    def cells(self):
        """(lambda, gamma) pairs in lambda-major order."""
        return [(lam, gam) for lam in self.lambda_axis for gam in self.gamma_axis]


@dataclass(frozen=True)
class GridRow:
    lam: float
    gam: float
    call: float
    put: float
    w: float
    mu_star: float
    error: str | None = None


@dataclass
class GridResult:
    spec: GridSpec
    rows: list
    provenance: dict = field(default_factory=dict)

    def value(self, lam, gam) -> float:
        for row in self.rows:
            if row.lam == lam and row.gam == gam:
                return row.call
        raise KeyError((lam, gam))


def table1_spec() -> GridSpec:
    return GridSpec(BENCHMARK, TABLE1_AXIS, TABLE1_AXIS)


def _evaluate_cell(args):
    market, lam, gam = args
    try:
        q = call_price(market, SkewParams(lam, gam))
    except ArithmeticError as exc:
        nan = math.nan
        return GridRow(lam, gam, nan, nan, nan, nan, error=f"{type(exc).__name__}: {exc}")
    return GridRow(lam, gam, q.call, q.put, q.w, q.mu_star)


def evaluate_grid(spec: GridSpec, executor: Executor | None = None, timestamp: str | None = None) -> GridResult:
    """Price every (lambda, gamma) cell of ``spec``.

    Rows come back in lambda-major order whatever the executor. A numerical
    failure in one cell is recorded in that row's ``error`` field instead of
    aborting the sweep.
    """
    jobs = [(spec.market, lam, gam) for lam, gam in spec.cells()]
    mapper = executor.map if executor is not None else map
    rows = list(mapper(_evaluate_cell, jobs))
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    provenance = {"method": "general", "timestamp": timestamp, "version": __version__}
    return GridResult(spec=spec, rows=rows, provenance=provenance)


def numerical_sensitivity(m: MarketParams, s, which: str, h: float = 1e-4) -> float:
    """Central difference of the call price in ``lambda`` or ``gamma``."""
    if not h > 0:
        raise InvalidParameterError("h must be > 0")
    s = s if isinstance(s, SkewParams) else SkewParams(*s)
    which = which.lower()
    if which in ("lambda", "lam"):
        up, down = SkewParams(s.lam + h, s.gam), SkewParams(s.lam - h, s.gam)
    elif which in ("gamma", "gam"):
        up, down = SkewParams(s.lam, s.gam + h), SkewParams(s.lam, s.gam - h)
    else:
        raise InvalidParameterError(f"which must be 'lambda' or 'gamma', got {which!r}")
    return (call_price(m, up).call - call_price(m, down).call) / (2.0 * h)


def monotonicity_report(spec: GridSpec, tol: float = 1e-10) -> dict:
    """Check the qualitative shape of a price surface.

    Per gamma row: the price peaks at lambda = 0, does not increase with
    |lambda| on either side, and sits below Black-Scholes wherever lambda != 0.
    Per lambda column: the price increases with gamma when lambda != 0 and is
    flat (within ``tol``) when lambda = 0.
    """
    lam_axis = spec.lambda_axis
    if 0.0 not in lam_axis:
        raise InvalidParameterError("lambda axis must contain 0")
    if sorted(-v for v in lam_axis) != list(lam_axis):
        raise InvalidParameterError("lambda axis must be symmetric about 0")
    result = evaluate_grid(spec, timestamp="")
    price = {(r.lam, r.gam): r.call for r in result.rows}
    bs = black_scholes_price(spec.market)
    left = [v for v in lam_axis if v <= 0][::-1]
    right = [v for v in lam_axis if v >= 0]

    rows = {}
    for gam in spec.gamma_axis:
        line = [price[(lam, gam)] for lam in lam_axis]
        peak = price[(0.0, gam)]
        rows[gam] = {
            "max_at_zero": all(c <= peak + tol for c in line),
            "decreasing_in_abs_lambda": all(
                price[(b, gam)] <= price[(a, gam)] + tol for side in (left, right) for a, b in zip(side, side[1:])
            ),
            "below_black_scholes": all(price[(lam, gam)] < bs for lam in lam_axis if lam != 0.0),
        }
    cols = {}
    for lam in lam_axis:
        col = [price[(lam, gam)] for gam in spec.gamma_axis]
        if lam == 0.0:
            cols[lam] = {"constant_in_gamma": max(col) - min(col) <= tol}
        else:
            cols[lam] = {"increasing_in_gamma": all(b > a for a, b in zip(col, col[1:]))}
    verdicts = [v for d in list(rows.values()) + list(cols.values()) for v in d.values()]
    return {"black_scholes": bs, "by_gamma": rows, "by_lambda": cols, "all_hold": all(verdicts)}


def _fmt(x: float) -> str:
    return format(x, ".15g")


def _row_dict(row: GridRow) -> dict:
    return {"lambda": row.lam, "gamma": row.gam, "call": row.call, "put": row.put, "w": row.w, "mu_star": row.mu_star}


def export(result: GridResult, fmt: str = "csv", include_timestamp: bool = False) -> bytes:
    """Serialize a grid as ``csv``, ``json`` or ``plotdata`` bytes.

    Floats are written with 15 significant digits. The timestamp is left out of
    JSON unless ``include_timestamp`` is set, which keeps output byte-stable.
    """
    fmt = fmt.lower()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for row in result.rows:
            writer.writerow([_fmt(v) for v in _row_dict(row).values()])
        return buf.getvalue().encode()
    if fmt == "json":
        prov = dict(result.provenance)
        if not include_timestamp:
            prov.pop("timestamp", None)
        m = result.spec.market
        doc = {
            "params": {
                "s0": m.s0,
                "k": m.k,
                "r": m.r,
                "sigma": m.sigma,
                "t": m.t,
                "lambda_axis": list(result.spec.lambda_axis),
                "gamma_axis": list(result.spec.gamma_axis),
            },
            "rows": [{**_row_dict(r), **({"error": r.error} if r.error else {})} for r in result.rows],
            "provenance": prov,
        }
        return (json.dumps(doc, indent=2, sort_keys=False, allow_nan=True) + "\n").encode()
    if fmt in ("plotdata", "plot"):
        series = []
        for gam in result.spec.gamma_axis:
            pts = [(r.lam, r.call) for r in result.rows if r.gam == gam]
            series.append({"gamma": gam, "lambda": [p[0] for p in pts], "call": [p[1] for p in pts]})
        return (json.dumps({"x": "lambda", "y": "call", "series": series}, indent=2) + "\n").encode()
    raise InvalidParameterError(f"unknown export format {fmt!r}")


def write(result: GridResult, path, fmt: str = "csv") -> Path:
    path = Path(path)
    try:
        path.write_bytes(export(result, fmt))
    except OSError as exc:
        raise OSError(f"could not write grid to {path}: {exc}") from exc
    return path


def read_csv(data: bytes) -> list:
    """Parse bytes produced by ``export(..., 'csv')`` back into `GridRow` objects."""
    reader = csv.DictReader(io.StringIO(data.decode()))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise InvalidParameterError(f"unexpected CSV header {reader.fieldnames}")
    return [
        GridRow(*(float(rec[k]) for k in CSV_FIELDS))
        for rec in reader
    ]
