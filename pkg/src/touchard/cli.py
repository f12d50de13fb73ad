"""Command-line harness: error tables, point evaluation, contours, Bm export.

Subcommands:

    touchard table1 [--n 50,80,121] [--m 0,1,3,4,6] [--digits D] [--out f.csv]
    touchard table2 [--xi 0.80,...] [--n 81,100] [--digits D] [--out f.csv]
    touchard eval --n N --xi X [--digits D]
    touchard contours --xi X [--step S] [--max-len L] [--digits D] [--out f.json]
    touchard bm [--max M] [--out f.json]

Tables are CSV with columns n,param,exact,approx,rel_err; the exact and
approx columns carry the full serialized precision so rel_err can be (and
on load, is) recomputed from the row itself. All output is deterministic:
identical invocations produce byte-identical bytes. Exit codes: 0 success,
2 domain error, 3 precision exhausted, 4 internal consistency failure.

TOUCHARD_DIGITS sets the default working precision (120 when unset).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from mpmath import mp, mpf

from .coalescence import _BM_CHECK, default_bm, theorem1_eval
from .contours import ContourSet, contour_set
from .errors import DomainError, InternalConsistencyError, TouchardError
from .numkernel import (BigReal, PrecisionContext, _sci, mk_context, raw,
                        real_from, wrap_real)
from .poincare import leading_order
from .stirling import ExactValue, build_triangle, scaled_touchard
from .uniform import theorem2_eval, uniform_ingredients

CSV_HEADER = "n,param,exact,approx,rel_err"
THEOREM1_XI_WINDOW = 0.02
POINCARE_BAND = 0.05

DEFAULT_N_TABLE1 = (50, 80, 121)
DEFAULT_M_TABLE1 = (0, 1, 3, 4, 6)
DEFAULT_XI_TABLE2 = ("0.80", "0.90", "0.95", "0.99", "1.00",
                     "1.01", "1.05", "1.10", "1.20", "1.40")
DEFAULT_N_TABLE2 = (81, 100)


@dataclass(frozen=True)
class ErrorRow:
    n: int
    param: BigReal
    exact: BigReal
    approx: BigReal
    rel_err: BigReal

    def to_csv(self) -> str:
        return ",".join([str(self.n), self.param.to_str(),
                         self.exact.to_str(), self.approx.to_str(),
                         _sci(self.rel_err.value, 4)])


def _relative_error(exact: BigReal, approx: BigReal, ctx: PrecisionContext) -> BigReal:
    with mp.workdps(ctx.digits + 10):
        ev = raw(exact)
        if ev == 0:
            raise DomainError("relative error undefined against an exact zero")
        return wrap_real(abs(raw(approx) - ev) / abs(ev), ctx)


def make_row(n: int, param: BigReal, exact: BigReal, approx: BigReal,
             ctx: PrecisionContext) -> ErrorRow:
    return ErrorRow(n=n, param=param, exact=exact, approx=approx,
                    rel_err=_relative_error(exact, approx, ctx))


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.to_csv() for r in rows]) + "\n"


def load_error_rows(text: str) -> list[ErrorRow]:
    """Parse a table CSV, recomputing rel_err from the row's own values."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise DomainError("not a touchard table CSV (bad header)")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 5:
            raise DomainError(f"malformed CSV row: {ln!r}")
        n = int(parts[0])
        param = BigReal.parse(parts[1])
        exact = BigReal.parse(parts[2])
        approx = BigReal.parse(parts[3])
        ctx = exact.ctx
        rel = _relative_error(exact, approx, ctx)
        if _sci(rel.value, 4) != parts[4]:
            raise InternalConsistencyError(
                f"stored rel_err {parts[4]} does not match the value "
                f"recomputed from the row ({_sci(rel.value, 4)})")
        rows.append(ErrorRow(n=n, param=param, exact=exact, approx=approx,
                             rel_err=rel))
    return rows


# ---------------------------------------------------------------------------
# table commands

def _exact_scaled(n: int, x: BigReal, triangle, ctx) -> ExactValue:
    return scaled_touchard(n - 1, wrap_real(-raw(x), ctx), triangle, ctx)


def cmd_table1(n_list=None, m_list=None, digits: int | None = None) -> str:
    n_list = list(DEFAULT_N_TABLE1 if n_list is None else n_list)
    m_list = list(DEFAULT_M_TABLE1 if m_list is None else m_list)
    ctx = mk_context(digits)
    triangle = build_triangle(max(n_list) - 1)
    bm = default_bm(max(12, max(m_list)))
    rows = []
    for n in n_list:
        with mp.workdps(ctx.digits + 10):
            x = wrap_real(n * mp.e, ctx)
        exact = _exact_scaled(n, x, triangle, ctx)
        for m in m_list:
            approx = theorem1_eval(n, m, ctx, bm=bm)
            rows.append(make_row(n, real_from(m, ctx), exact.value, approx, ctx))
    return rows_to_csv(rows)


def cmd_table2(xi_list=None, n_list=None, digits: int | None = None) -> str:
    xi_list = list(DEFAULT_XI_TABLE2 if xi_list is None else xi_list)
    n_list = list(DEFAULT_N_TABLE2 if n_list is None else n_list)
    ctx = mk_context(digits)
    triangle = build_triangle(max(n_list) - 1)
    rows = []
    for xi in xi_list:
        xi_br = real_from(xi, ctx)
        ing = uniform_ingredients(xi_br, ctx)
        for n in n_list:
            with mp.workdps(ctx.digits + 10):
                x = wrap_real(n * mp.e * raw(xi_br), ctx)
            exact = _exact_scaled(n, x, triangle, ctx)
            approx = theorem2_eval(n, xi_br, ctx, ingredients=ing)
            rows.append(make_row(n, xi_br, exact.value, approx, ctx))
    return rows_to_csv(rows)


# ---------------------------------------------------------------------------
# point evaluation

def _method_entry(fn, exact: BigReal, ctx) -> dict:
    try:
        value = fn()
        return {"value": value.to_str(),
                "rel_err": _sci(_relative_error(exact, value, ctx).value, 4)}
    except TouchardError as exc:
        return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def cmd_eval(n: int, xi, digits: int | None = None) -> dict:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    ctx = mk_context(digits)
    xi_br = real_from(xi, ctx)
    if raw(xi_br) <= 0:
        raise DomainError(f"xi must be positive, got {raw(xi_br)}")
    with mp.workdps(ctx.digits + 10):
        xiv = raw(xi_br)
        x = wrap_real(n * mp.e * xiv, ctx)
        mu = wrap_real(1 / (mp.e * xiv), ctx)
        near_coalescence = abs(xiv - 1) < THEOREM1_XI_WINDOW
        outside_band = abs(raw(mu) * mp.e - 1) > POINCARE_BAND
    triangle = build_triangle(n - 1)
    exact = _exact_scaled(n, x, triangle, ctx)
    report = {
        "n": n,
        "xi": xi_br.to_str(),
        "x": x.to_str(),
        "mu": mu.to_str(),
        "digits": ctx.digits,
        "exact": {
            "value": exact.value.to_str(),
            "cancellation_digits": exact.cancellation_digits,
            "verified": exact.verified,
        },
        "methods": {},
    }
    if near_coalescence:
        report["methods"]["theorem1"] = _method_entry(
            lambda: theorem1_eval(n, 6, ctx), exact.value, ctx)
    report["methods"]["theorem2"] = _method_entry(
        lambda: theorem2_eval(n, xi_br, ctx), exact.value, ctx)
    if outside_band:
        report["methods"]["poincare"] = _method_entry(
            lambda: leading_order(n, mu, ctx).value, exact.value, ctx)
    try:
        ing = uniform_ingredients(xi_br, ctx)
        report["saddles"] = {
            "kind": ing.saddles.kind.value,
            "t0": ing.saddles.t0.to_str(),
            "t1": ing.saddles.t1.to_str(),
            "zeta": ing.zeta.to_str(),
            "re_beta": ing.beta.re.to_str(),
            "A0": ing.A0.to_str(),
            "B0": ing.B0.to_str(),
        }
    except TouchardError as exc:
        report["saddles"] = {"error": {"type": type(exc).__name__,
                                       "message": str(exc)}}
    return report


# ---------------------------------------------------------------------------
# contours and Bm export

_EMIT_CTX = mk_context(30)  # plot-ready rounding for emitted polylines


def contours_to_json(cs: ContourSet) -> dict:
    def r30(v) -> str:
        return wrap_real(v, _EMIT_CTX).to_str()

    return {
        "xi": cs.xi.to_str(),
        "mu": cs.mu.to_str(),
        "saddle_kind": cs.saddle_kind.value,
        "polylines": [
            {
                "saddle": [r30(pl.saddle.re.value), r30(pl.saddle.im.value)],
                "kind": pl.kind,
                "launch_theta": pl.launch_theta,
                "stop_reason": pl.stop_reason,
                "im_psi_drift": _sci(pl.im_psi_drift.value, 4),
                "points": [[r30(p.re.value), r30(p.im.value)]
                           for p in pl.points],
            }
            for pl in cs.polylines
        ],
    }


def cmd_contours(xi, digits: int | None = None, step=None, max_len=None) -> dict:
    ctx = mk_context(digits)
    return contours_to_json(contour_set(real_from(xi, ctx), ctx,
                                        step=step, max_len=max_len))


def cmd_bm(max_order: int = 12) -> dict:
    if max_order < 0:
        raise DomainError(f"max order must be >= 0, got {max_order}")
    table = default_bm(max_order)
    entries = []
    for m, b in enumerate(table.B):
        entries.append({
            "m": m,
            "numerator": str(b.numerator),
            "denominator": str(b.denominator),
            "contributes": not table.zero_mask[m],
            "cross_checked": m in _BM_CHECK,
        })
    return {"order": max_order, "entries": entries}


# ---------------------------------------------------------------------------
# argument plumbing

def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def _str_list(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip() != ""]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="touchard",
        description="High-precision Touchard polynomial asymptotics near "
                    "saddle coalescence")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--digits", type=int, default=None,
                       help="working precision (default: TOUCHARD_DIGITS or 120)")
        p.add_argument("--out", default=None, help="write output to this path")

    p1 = sub.add_parser("table1", help="error table for the coalescence series")
    p1.add_argument("--n", type=_int_list, default=None)
    p1.add_argument("--m", type=_int_list, default=None)
    common(p1)

    p2 = sub.add_parser("table2", help="error table for the uniform approximation")
    p2.add_argument("--xi", type=_str_list, default=None)
    p2.add_argument("--n", type=_int_list, default=None)
    common(p2)

    pe = sub.add_parser("eval", help="evaluate one (n, xi) point by all methods")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--xi", required=True)
    common(pe)

    pc = sub.add_parser("contours", help="trace steepest descent/ascent paths")
    pc.add_argument("--xi", required=True)
    pc.add_argument("--step", default=None)
    pc.add_argument("--max-len", dest="max_len", default=None)
    common(pc)

    pb = sub.add_parser("bm", help="export the series coefficients as JSON")
    pb.add_argument("--max", dest="max_order", type=int, default=12)
    common(pb)
    return ap


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "table1":
            _emit(cmd_table1(args.n, args.m, args.digits), args.out)
        elif args.command == "table2":
            _emit(cmd_table2(args.xi, args.n, args.digits), args.out)
        elif args.command == "eval":
            report = cmd_eval(args.n, args.xi, args.digits)
            _emit(json.dumps(report, indent=2) + "\n", args.out)
        elif args.command == "contours":
            report = cmd_contours(args.xi, args.digits, args.step, args.max_len)
            _emit(json.dumps(report, indent=2) + "\n", args.out)
        elif args.command == "bm":
            _emit(json.dumps(cmd_bm(args.max_order), indent=2) + "\n", args.out)
    except TouchardError as exc:
        print(f"touchard: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
