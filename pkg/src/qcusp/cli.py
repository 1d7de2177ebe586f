"""Command line surface.

Exit codes: 0 for yes/success, 1 for no, 2 for unknown-at-precision, 64 for
usage or input errors. Output is byte-deterministic for fixed inputs and
flags: terms are emitted in exponent order and nothing time- or
environment-dependent is printed.
"""

from __future__ import annotations

import argparse
import sys

from .action import CuspPoint, Mat2, ProjPoint, act_cusp
from .coeff import new_ring
from .errors import QcuspError
from .fileformat import (
    emit_series,
    emit_tower,
    format_coefficient,
    format_exponent,
    header_metadata,
    parse_series,
)
from .modular import j_inverse_series, j_series
from .principles import PrincipleVerdict, Verdict, detect_level, extends_to_cusp, is_integral
from .series import FracSeries
from .tiltperf import CharPSeries, frobenius_inv, tower_from_charp
from .trace import tate_trace
from .valuation import classify_point, generise, v1minus

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64

_VERDICT_EXIT = {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2, which we reserve
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _overrides(args) -> dict:
    return {
        "p": args.p, "k": args.k, "s": args.s,
        "depth": args.depth, "deg": args.deg,
    }


def _load_frac(args) -> tuple[FracSeries, dict]:
    text = _read_input(args.file)
    meta = header_metadata(text)
    series = parse_series(text, _overrides(args))
    if not isinstance(series, FracSeries):
        raise QcuspError("this subcommand needs a coefficient-ring (mode=frac) series")
    return series, meta


def _load_charp(args) -> tuple[CharPSeries, dict]:
    text = _read_input(args.file)
    meta = header_metadata(text)
    series = parse_series(text, _overrides(args))
    if not isinstance(series, CharPSeries):
        raise QcuspError("this subcommand needs a mode=charp series")
    return series, meta


def _print_verdict(v: PrincipleVerdict, out) -> int:
    out.write(f"verdict {v.verdict.value}\n")
    if v.witness is not None:
        m, c = v.witness
        p = c.ctx.p
        out.write(f"witness {format_exponent(m, p)} : {format_coefficient(c)}\n")
    if v.note:
        out.write(f"note {v.note}\n")
    return _VERDICT_EXIT[v.verdict]


def _require(parser: _Parser, args, *names) -> None:
    for name in names:
        if getattr(args, name) is None:
            parser.error(f"--{name} is required for this subcommand")


def _parse_gamma(parser: _Parser, text: str, p: int, m: int) -> Mat2:
    try:
        a, b, c, d = (int(v) for v in text.split(","))
        return Mat2(p, m, a, b, c, d)
    except QcuspError as exc:
        parser.error(str(exc))
    except ValueError:
        parser.error(f"--gamma wants four comma-separated integers, got {text!r}")


def _add_global_options(parser, default, skip=()) -> None:
    """The header-override options; accepted before or after the subcommand.
    Subparsers pass default=SUPPRESS so they never clobber a value that was
    already parsed at the top level."""
    if "p" not in skip:
        parser.add_argument("--p", type=int, default=default, help="prime (header override / generation parameter)")
    if "k" not in skip:
        parser.add_argument("--k", type=int, default=default, help="p-adic precision exponent")
    if "s" not in skip:
        parser.add_argument("--s", type=int, default=default, help="cyclotomic depth")
    if "depth" not in skip:
        parser.add_argument("--depth", type=int, default=default, help="denominator depth bound")
    if "deg" not in skip:
        parser.add_argument("--deg", default=default, help="degree bound")


def build_parser() -> _Parser:
    parser = _Parser(prog="qcusp", description="Exact arithmetic for fractional-exponent q-expansions at the cusps of p-adic modular curves.")
    _add_global_options(parser, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    suppress = argparse.SUPPRESS

    sp = sub.add_parser("jseries", help="emit the j-invariant expansion")
    sp.add_argument("--terms", type=int, required=True)
    _add_global_options(sp, suppress)

    sp = sub.add_parser("revert-j", help="emit the reversion q(w), w = 1/j")
    sp.add_argument("--terms", type=int, required=True)
    _add_global_options(sp, suppress)

    sp = sub.add_parser("trace", help="normalized trace to level n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("file")
    _add_global_options(sp, suppress)

    for name, help_text in (
        ("check-extends", "does the expansion extend over the cusp"),
        ("integral", "is the expansion integral"),
        ("level", "minimal level the expansion comes from"),
        ("classify-point", "rank-2 valuation data and point type of a Laurent expansion"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        _add_global_options(sp, suppress)

    sp = sub.add_parser("act", help="act on a cusp point by a matrix in the c = 0 mod p chart")
    sp.add_argument("--gamma", required=True, help="a,b,c,d entries")
    sp.add_argument("--x-gamma", default=None, help="matrix of the cusp point (default identity)")
    sp.add_argument("--ex", type=int, default=None, help="renormalization index e (default: header e)")
    sp.add_argument("--m", type=int, default=None, help="matrix precision (default: series depth bound, at least 1)")
    sp.add_argument("file")
    _add_global_options(sp, suppress)

    sp = sub.add_parser("ht", help="period map image (b : d) of an upper-triangular matrix")
    sp.add_argument("--gamma", required=True, help="a,b,0,d entries")
    sp.add_argument("--m", type=int, required=True, help="matrix precision")
    _add_global_options(sp, suppress)

    sp = sub.add_parser("tilt", help="tilt a charp series into a compatibility tower")
    sp.add_argument("--depth", type=int, required=True, dest="tower_depth",
                    help="tower depth T")
    sp.add_argument("file")
    _add_global_options(sp, suppress, skip=("depth",))

    sp = sub.add_parser("perfection", help="adjoin p-power roots: iterate q -> q^(1/p)")
    sp.add_argument("--iterations", type=int, default=1)
    sp.add_argument("file")
    _add_global_options(sp, suppress)

    return parser


def run(argv: list[str], out=None) -> int:
    """Execute one subcommand; returns the exit code and never raises for
    usage or input problems."""
    try:
        return _dispatch(argv, out if out is not None else sys.stdout)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"qcusp: {exc}\n")
        return EXIT_USAGE
    except QcuspError as exc:
        sys.stderr.write(f"qcusp: {exc}\n")
        return EXIT_USAGE


def _dispatch(argv: list[str], out) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "jseries":
        _require(parser, args, "p", "k", "s")
        ctx = new_ring(args.p, args.k, args.s)
        out.write(emit_series(j_series(ctx, args.terms)))
        return EXIT_YES

    if args.command == "revert-j":
        _require(parser, args, "p", "k", "s")
        ctx = new_ring(args.p, args.k, args.s)
        out.write(emit_series(j_inverse_series(ctx, args.terms)))
        return EXIT_YES

    if args.command == "trace":
        series, meta = _load_frac(args)
        traced = tate_trace(series, args.n)
        out.write(emit_series(traced, meta.get("cusp_label", ""), int(meta.get("e", "1"))))
        return EXIT_YES

    if args.command == "check-extends":
        series, _ = _load_frac(args)
        return _print_verdict(extends_to_cusp(series), out)

    if args.command == "integral":
        series, _ = _load_frac(args)
        return _print_verdict(is_integral(series), out)

    if args.command == "level":
        series, _ = _load_frac(args)
        out.write(f"{detect_level(series)}\n")
        return EXIT_YES

    if args.command == "act":
        series, meta = _load_frac(args)
        e = args.ex if args.ex is not None else int(meta.get("e", "1"))
        m = args.m if args.m is not None else max(1, series.depth_bound)
        g1 = _parse_gamma(parser, args.gamma, series.ctx.p, m)
        if args.x_gamma is None:
            base = Mat2.identity(series.ctx.p, m)
        else:
            base = _parse_gamma(parser, args.x_gamma, series.ctx.p, m)
        x = CuspPoint(base, series, e, meta.get("cusp_label", ""))
        y = act_cusp(g1, x)
        g = y.gamma
        out.write(f"gamma {g.a},{g.b},{g.c},{g.d}\n")
        out.write(emit_series(y.series, y.cusp_label, y.e))
        return EXIT_YES

    if args.command == "ht":
        _require(parser, args, "p")
        g = _parse_gamma(parser, args.gamma, args.p, args.m)
        if not g.is_upper():
            parser.error("ht wants an upper-triangular matrix a,b,0,d")
        pt = ProjPoint.make(args.p, args.m, g.b, g.d)
        out.write(f"({pt.x} : {pt.y})\n")
        return EXIT_YES

    if args.command == "tilt":
        series, meta = _load_charp(args)
        tower = tower_from_charp(series, args.tower_depth)
        out.write(emit_tower(tower, meta.get("cusp_label", ""), int(meta.get("e", "1"))))
        return EXIT_YES

    if args.command == "perfection":
        series, meta = _load_charp(args)
        lifted = CharPSeries(series.p, dict(series.items()), series.deg_bound,
                             series.depth_bound + args.iterations, series.laurent, _trusted=True)
        for _ in range(args.iterations):
            lifted = frobenius_inv(lifted)
        out.write(emit_series(lifted, meta.get("cusp_label", ""), int(meta.get("e", "1"))))
        return EXIT_YES

    if args.command == "classify-point":
        series, _ = _load_frac(args)
        val = v1minus(series)
        out.write(f"type {classify_point(val)}\n")
        out.write(f"v1minus {val.v} {val.g}\n")
        out.write(f"generise {generise(val)}\n")
        return EXIT_YES

    raise AssertionError("unreachable")


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
