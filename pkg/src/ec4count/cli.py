"""Command-line front end: ``ec4count classify|count|table|constants``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext

from . import census
from .arithmetic import HeightBound
from .constants import ConstantsReport, QuadratureError, assemble_constants
from .curves import (
    MinimalCurve,
    classify_pairs,
    height,
    non_minimal_prime,
    recover_triple,
)

N1_TABLE = [10**e for e in range(18, 31, 3)]
N2_TABLE = [10**e for e in range(30, 61, 6)]


class CliError(Exception):
    """A structured, user-facing failure; ``kind`` is machine readable."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class HeightSpec:
    raw: str
    parsed: int


_DECIMAL = re.compile(r"\d+")
_POWER = re.compile(r"(\d+)\^(\d+)")
_SCI = re.compile(r"(\d+)[eE]\+?(\d+)")


def parse_height(raw: str) -> HeightSpec:
    """Parse "1000000", "10^30" or "1e30" into an exact integer >= 1."""
    text = raw.strip().replace("_", "")
    if _DECIMAL.fullmatch(text):
        value = int(text)
    elif m := _POWER.fullmatch(text):
        value = int(m.group(1)) ** int(m.group(2))
    elif m := _SCI.fullmatch(text):
        value = int(m.group(1)) * 10 ** int(m.group(2))
    else:
        raise CliError("parse", f"not an integral height: {raw!r}")
    if value < 1:
        raise CliError("parse", f"height must be >= 1: {raw!r}")
    return HeightSpec(raw, value)


def _root(X: int, n: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 60
        return Decimal(X) ** (Decimal(1) / Decimal(n))


def delta_n1(X: int, n1: int, report: ConstantsReport) -> float:
    """N1(X) - c11 X^(1/3) - c12 X^(1/6)."""
    with localcontext() as ctx:
        ctx.prec = 60
        main = Decimal(report.c11.value) * _root(X, 3) + Decimal(report.c12.value) * _root(X, 6)
        return float(Decimal(n1) - main)


def delta_n2(X: int, n2: int, report: ConstantsReport) -> float:
    """N2(X) - c21 X^(1/6)."""
    with localcontext() as ctx:
        ctx.prec = 60
        return float(Decimal(n2) - Decimal(report.c21.value) * _root(X, 6))


def round_one_decimal(x: float) -> str:
    """Round half away from zero to one decimal place."""
    return str(Decimal(repr(x)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def _emit(payload: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def cmd_classify(A: int, B: int, as_json: bool = False) -> int:
    c = MinimalCurve(A, B)
    if c.is_singular:
        raise CliError("singular", f"y^2 = x^3 + {A}x + {B} is singular (4A^3 + 27B^2 = 0)")
    bad = non_minimal_prime(A, B)
    if bad is not None:
        raise CliError(
            "non_minimal", f"({A}, {B}) is not minimal: {bad}^4 | A and {bad}^6 | B"
        )
    pc = classify_pairs(c)
    payload = {
        "A": str(A),
        "B": str(B),
        "height": str(height(c)),
        "minimal": True,
        "singular": False,
        "pairs": pc.count,
        "witnesses": [
            {"b0": str(wt.b0), "a": str(wt.a), "gamma": str(wt.gamma), "delta": str(wt.delta)}
            for wt in pc.witnesses
        ],
    }
    lines = [
        f"curve     y^2 = x^3 + ({A})x + ({B})",
        f"height    {height(c)}",
        f"pairs     {pc.count}",
    ]
    for wt in pc.witnesses:
        lines.append(
            f"witness   b0={wt.b0} a={wt.a}  model y^2 = x(x^2 + {wt.gamma}x + {wt.delta}^2)"
        )
    if pc.count == 2:
        t = recover_triple(c)
        payload["triple"] = {"r": t.r, "v": t.v, "w": t.w, "case": t.case_tag}
        lines.append(f"triple    (r, v, w) = ({t.r}, {t.v}, {t.w})  case ({t.case_tag})")
    _emit(payload, as_json, lines)
    return 0


def cmd_count(kind: str, X: HeightSpec, method: str = "fast", threads: int | None = None,
              as_json: bool = False) -> int:
    h = HeightBound(X.parsed)
    try:
        if kind == "n1":
            res = census.count_n1_naive(h) if method == "naive" else census.count_n1_fast(h, threads)
        elif kind == "n2":
            res = census.count_n2_naive(h) if method == "naive" else census.count_n2(h)
        else:
            res = census.count_full_scan(h)
    except ValueError as exc:
        raise CliError("guard", str(exc)) from exc
    payload = res.as_json()
    if kind == "n2":
        payload.pop("n1", None)
    lines = [f"X = {res.X}"]
    if kind == "scan":
        lines += [
            f"curves with 0 pairs    {res.n0}",
            f"curves with 1 pair     {res.exactly_one}",
            f"curves with 2 pairs    {res.exactly_two}",
            f"N1 (at least 1 pair)   {res.n1}",
            f"N2 (2 pairs)           {res.n2}",
        ]
    else:
        if kind == "n1":
            lines.append(f"N1 = {res.n1}   (lattice count {res.lattice_count}, N2 = {res.n2})")
        else:
            lines.append(f"N2 = {res.n2}")
        lines.append(f"method {res.method}, {res.elapsed * 1000:.1f} ms")
    _emit(payload, as_json, lines)
    return 0


def table_rows(kind: str, max_height: int | None = None, threads: int | None = None,
               report: ConstantsReport | None = None) -> list[dict]:
    report = report or assemble_constants()
    rows = []
    for X in N1_TABLE if kind == "n1" else N2_TABLE:
        if max_height is not None and X > max_height:
            continue
        if kind == "n1":
            n = census.count_n1_fast(X, threads).n1
            d = delta_n1(X, n, report)
        else:
            n = census.count_n2(X).n2
            d = delta_n2(X, n, report)
        rows.append({"X": X, "count": n, "delta": d, "delta_rounded": round_one_decimal(d)})
    return rows


def format_table(kind: str, rows: list[dict]) -> str:
    if kind == "n1":
        head = ("X", "N1(X)", "N1(X) - c11 X^(1/3) - c12 X^(1/6)")
    else:
        head = ("X", "N2(X)", "N2(X) - c21 X^(1/6)")
    body = [(f"10^{len(str(r['X'])) - 1}", str(r["count"]), r["delta_rounded"]) for r in rows]
    widths = [max(len(row[k]) for row in [head, *body]) for k in range(3)]
    out = [" | ".join(h.ljust(wd) for h, wd in zip(head, widths))]
    out.append("-+-".join("-" * wd for wd in widths))
    for row in body:
        out.append(" | ".join([row[0].ljust(widths[0]), row[1].rjust(widths[1]), row[2].rjust(widths[2])]))
    return "\n".join(out)


def cmd_table(kind: str, max_height: HeightSpec | None = None, threads: int | None = None,
              as_json: bool = False) -> int:
    rows = table_rows(kind, max_height.parsed if max_height else None, threads)
    payload = {
        "kind": kind,
        "rows": [
            {"X": str(r["X"]), "count": str(r["count"]), "delta": r["delta_rounded"]} for r in rows
        ],
    }
    _emit(payload, as_json, [format_table(kind, rows)])
    return 0


def cmd_constants(tol: float = 1e-12, as_json: bool = False) -> int:
    if not tol > 0:
        raise CliError("parse", "tol must be positive")
    try:
        report = assemble_constants(tol)
    except QuadratureError as exc:
        raise CliError("quadrature", str(exc)) from exc
    ident = report.beta_identity
    lines = [f"{name:<10} {est.value: .15f}  ± {est.error:.1e}" for name, est in report.items()]
    lines.append(
        f"2beta - (alpha3 + alpha4) = {ident.value:.3e}  ± {ident.error:.1e}"
        f"  [{'ok' if abs(ident.value) <= ident.error else 'FAILED'}]"
    )
    s0_direct = 16 * report.s0_prime.value / (15 * report.zeta4.value)
    lines.append(f"s0 = 16 s0'/(15 zeta(4)) = {s0_direct:.15f}")
    _emit(report.as_json(), as_json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ec4count",
        description="Count elliptic curves over Q with Galois-stable cyclic subgroups of order 4.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="number of pairs for y^2 = x^3 + Ax + B")
    p.add_argument("--a", type=int, required=True, dest="A")
    p.add_argument("--b", type=int, required=True, dest="B")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("count", help="exact N1(X), N2(X) or a full classification scan")
    p.add_argument("kind", choices=["n1", "n2", "scan"])
    p.add_argument("--height", required=True)
    p.add_argument("--method", choices=["naive", "fast"], default="fast")
    p.add_argument("--threads", type=int, default=None, help="worker processes; 0 = all cores")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="reproduce the N1 or N2 table with delta column")
    p.add_argument("kind", choices=["n1", "n2"])
    p.add_argument("--max-height", default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("constants", help="evaluate the asymptotic constants")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            return cmd_classify(args.A, args.B, args.json)
        if args.command == "count":
            return cmd_count(args.kind, parse_height(args.height), args.method, args.threads, args.json)
        if args.command == "table":
            mh = parse_height(args.max_height) if args.max_height else None
            return cmd_table(args.kind, mh, args.threads, args.json)
        return cmd_constants(args.tol, args.json)
    except CliError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": exc.kind, "message": str(exc)}))
        else:
            print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
