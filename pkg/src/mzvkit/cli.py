"""Command line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from pathlib import Path

import mpmath
from mpmath import mp, mpf

from . import clausen, oracle, verify
from .numerics import ConstantCache, make_context, use_cache
from .quadrature import QuadratureError

CACHE_ENV = "MZVKIT_CACHE_DIR"
DEFAULT_CACHE_DIR = ".mzv-cache"

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("mzvkit")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    digits: int
    ids: list[str]
    ranges: verify.Ranges = field(default_factory=verify.Ranges)
    out: str | None = None
    fmt: str = "json"
    cache_dir: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.digits < 0:
            raise UsageError("--digits must be >= 1")
        if min(self.ranges.r_max, self.ranges.s_max, self.ranges.p_max) < 0:
            raise UsageError("ranges must be non-negative")
        unknown = [i for i in self.ids if i not in verify.CATALOG]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
        if not self.ids:
            raise UsageError("no identities selected (use --id or --all)")
        if self.digits == 0 and any(verify.CATALOG[i].kind != "exact" for i in self.ids):
            raise UsageError("--digits 0 is only meaningful for exact series identities")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


def resolve_cache_dir(flag: str | None) -> str:
    return flag or os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR


def format_fixed(value, places: int) -> str:
    """Round to a fixed number of digits after the decimal point."""
    text = mpmath.nstr(value, places + 25, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    q = Decimal(text).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    return f"{q:f}"


_THETA = re.compile(r"^\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?pi\s*(?:/\s*(\d+))?\s*$")


def parse_theta(text: str, ctx) -> mpf:
    """Accepts 'pi', 'pi/2', '2pi/3', '2*pi/3', or a plain number."""
    m = _THETA.match(text)
    with ctx.workprec(20):
        if m:
            factor = Fraction(m.group(1) or 1)
            if m.group(2):
                factor /= int(m.group(2))
            return mpf(factor.numerator) / factor.denominator * mp.pi
        try:
            return mpf(text)
        except ValueError:
            raise UsageError(f"cannot parse angle {text!r}") from None


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


# --- commands ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    ctx = make_context(args.digits)
    kind = args.kind
    try:
        if kind in ("mzv", "t", "hurwitz"):
            comp = parse_ints(args.args[0])
            if kind == "hurwitz":
                if args.shifts is None:
                    raise UsageError("hurwitz needs --shifts")
                shifts = parse_rationals(args.shifts)
                result = oracle.hurwitz_mzv_result(comp, shifts, ctx)
            elif kind == "mzv":
                result = oracle.mzv_result(comp, ctx)
            else:
                result = oracle.tvalue_result(comp, ctx)
            value, bound = result.value, result.error_bound
            certificate = f"# |error| <= {mpmath.nstr(bound, 3)} (nested sum to N={result.cutoff} + asymptotic tail)"
        else:
            if len(args.args) != 2:
                raise UsageError("clausen needs an order and an angle")
            m = int(args.args[0])
            value = clausen.clausen_eval(m, parse_theta(args.args[1], ctx), ctx)
            certificate = f"# series truncated below 2^-{ctx.bits}"
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    print(format_fixed(value, args.digits))
    print(certificate)
    return EXIT_OK


def _emit(reports, cfg: RunConfig) -> None:
    text = verify.reports_to_json(reports) if cfg.fmt == "json" else verify.reports_to_csv(reports)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for r in reports:
        print(f"{r.status:9s} {r.id:18s} {r.params} digits={r.digits_agreed}", file=sys.stderr)


def _ranges(args) -> verify.Ranges:
    return verify.Ranges(r_max=args.r_max, s_max=args.s_max, p_max=args.p_max)


def run_config(cfg: RunConfig) -> tuple[list, int]:
    items = verify.expand(cfg.ids, cfg.ranges)
    reports = verify.run_batch(items, cfg.digits, cfg.jobs, cfg.cache_dir)
    _emit(reports, cfg)
    if any(r.rhs.startswith("error:") for r in reports):
        return reports, EXIT_NUMERIC
    return reports, EXIT_OK if verify.all_passed(reports) else EXIT_MISMATCH


def cmd_verify(args) -> int:
    ids = list(verify.CATALOG) if args.all else list(args.id or [])
    cfg = RunConfig(args.digits, ids, _ranges(args), args.out, args.format,
                    resolve_cache_dir(args.cache_dir), args.jobs)
    return run_config(cfg)[1]


def cmd_conjecture(args) -> int:
    ident = {"H": "conj-H", "T": "conj-T"}[args.which]
    cfg = RunConfig(args.digits, [ident], _ranges(args), args.out, args.format,
                    resolve_cache_dir(args.cache_dir), args.jobs)
    reports, code = run_config(cfg)
    if code == EXIT_OK or code == EXIT_MISMATCH:
        return EXIT_MISMATCH if any(r.status == "fail" for r in reports) else EXIT_OK
    return code


def cmd_cache(args) -> int:
    directory = Path(resolve_cache_dir(args.cache_dir))
    path = directory / "constants.tsv"
    if args.action == "clear":
        if path.exists():
            path.unlink()
        return EXIT_OK
    if args.action == "warm":
        ctx = make_context(args.digits)
        cache = ConstantCache.in_directory(directory)
        use_cache(cache)
        from .numerics import zeta_int
        for n in range(3, args.max_zeta + 1, 2):
            zeta_int(n, ctx)
        return EXIT_OK
    cache = ConstantCache(path)
    for name, bits, text in cache.entries():
        print(f"{name}\t{bits}\t{text}")
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzvkit", description="Multiple zeta value evaluation and identity checks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a single value")
    p.add_argument("kind", choices=["mzv", "t", "hurwitz", "clausen"])
    p.add_argument("args", nargs="+", help="composition like 2,3 (or: order angle for clausen)")
    p.add_argument("--shifts", help="comma-separated rational shifts for hurwitz")
    p.add_argument("--digits", type=int, default=20)
    p.set_defaults(func=cmd_eval)

    def add_run_flags(q, digits_default):
        q.add_argument("--digits", type=int, default=digits_default)
        q.add_argument("--r-max", type=int, default=3)
        q.add_argument("--s-max", type=int, default=3)
        q.add_argument("--p-max", type=int, default=12)
        q.add_argument("--out")
        q.add_argument("--format", choices=["json", "csv"], default="json")
        q.add_argument("--jobs", type=int, default=1)
        q.add_argument("--cache-dir")

    p = sub.add_parser("verify", help="run catalog identities and write a report")
    p.add_argument("--id", action="append", help="identity id (repeatable)")
    p.add_argument("--all", action="store_true", help="run the whole catalog")
    add_run_flags(p, 25)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="test a conjectured zeta-series formula over a grid")
    p.add_argument("which", choices=["H", "T"])
    add_run_flags(p, 20)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("cache", help="inspect or fill the constant cache")
    p.add_argument("action", choices=["list", "clear", "warm"])
    p.add_argument("--cache-dir")
    p.add_argument("--digits", type=int, default=50)
    p.add_argument("--max-zeta", type=int, default=25)
    p.set_defaults(func=cmd_cache)

    p = sub.add_parser("list", help="list catalog identities")
    p.set_defaults(func=lambda a: _list_catalog())
    return parser


def _list_catalog() -> int:
    for ident in verify.CATALOG.values():
        print(f"{ident.id:20s} {ident.kind:11s} {ident.description}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mzvkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (oracle.OracleError, QuadratureError, ArithmeticError) as exc:
        print(f"mzvkit: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
