"""Identity catalog, verification reports and the batch runner."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import mpmath
from mpmath import mp, mpf

from . import clausen, identities, oracle, series, zeta_series
from .numerics import ConstantCache, PrecisionContext, make_context, use_cache, zeta_int
from .quadrature import gauss_legendre_quad

log = logging.getLogger(__name__)

REPORT_FIELDS = ("id", "params", "lhs", "rhs", "abs_diff", "digits_agreed", "precision_bits", "wall_ms", "status")
# digits_agreed for an exact (rational) equality
EXACT_AGREEMENT = 999
SERIES_ORDER = 40
ORR_POINTS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2))


@dataclass
class VerificationReport:
    id: str
    params: dict
    lhs: str
    rhs: str
    abs_diff: str
    digits_agreed: int
    precision_bits: int
    wall_ms: int
    status: str

    def to_dict(self) -> dict:
        return asdict(self)

    def comparable(self) -> dict:
        """Everything except timing."""
        d = self.to_dict()
        d.pop("wall_ms")
        return d


def digits_agreed(lhs, rhs, bits: int) -> int:
    """-log10(|lhs - rhs| / max(|lhs|, 1)), floored at 0 and capped at the precision."""
    cap = int(bits * math.log10(2))
    with mp.workprec(bits + 10):
        diff = abs(mpf(lhs) - mpf(rhs))
        if diff == 0:
            return cap
        rel = diff / max(abs(mpf(lhs)), mpf(1))
        return max(0, min(cap, int(mpmath.floor(-mpmath.log10(rel)))))


@dataclass(frozen=True)
class Identity:
    id: str
    kind: str  # "theorem", "conjecture" or "exact"
    evaluate: Callable
    grid: Callable = field(repr=False)
    description: str = ""


# --- evaluators: params, ctx -> (lhs, rhs) or exact outcome ------------------------

def _two_block_zeta(p, ctx):
    r = p["r"]
    return oracle.mzv_direct([2] * r, ctx), identities.zeta_two_block(r).evaluate(ctx)


def _two_block_t(p, ctx):
    r = p["r"]
    return oracle.tvalue_direct([2] * r, ctx), identities.t_two_block(r).evaluate(ctx)


def _h_general(p, ctx):
    r, s = p["r"], p["s"]
    return identities.h_closed(r, s, ctx), oracle.mzv_direct([2] * r + [3] + [2] * s, ctx)


def _h_r0(p, ctx):
    r = p["r"]
    return identities.h_closed_r0(r, ctx), oracle.mzv_direct([2] * r + [3], ctx)


def _h_series(p, ctx):
    r = p["r"]
    return zeta_series.h_series(r, ctx), identities.h_closed_r0(r, ctx)


def _t_series(p, ctx):
    r = p["r"]
    return zeta_series.t_series(r, ctx), oracle.tvalue_direct([2] * r + [3], ctx)


def _t_closed(p, ctx):
    r = p["r"]
    return identities.t_closed(r, ctx), oracle.tvalue_direct([2] * r + [3], ctx)


def _lemma(p, ctx):
    k = p["p"]
    return zeta_series.rzs_eval(k, ctx, 0, -2), zeta_series.lemma26_rhs(k, ctx)


def _orr(p, ctx):
    z = Fraction(p["z_num"], p["z_den"])
    rhs = clausen.orr_rhs(p["p"], z, ctx)
    if p.get("quad"):
        return clausen.cot_moment_via_quadrature(p["p"], z, ctx), rhs
    return clausen.cot_moment_via_series(p["p"], z, ctx), rhs


def _euler(p, ctx):
    return zeta_series.euler1775(ctx), zeta_int(3, ctx)


def _arcsin_sq_integral(p, ctx):
    def integrand(x):
        return mp.asin(x) ** 2 / x

    lhs = gauss_legendre_quad(integrand, 0, 1, ctx)
    with ctx.workprec(10):
        rhs = mp.pi ** 2 * mp.ln2 / 4 - mpf(7) / 8 * zeta_int(3, ctx)
    return lhs, rhs


def _clausen_special(p, ctx):
    point = {1: "pi", 2: "pi/2"}[p["at"]]
    with ctx.workprec(20):
        theta = mp.pi if point == "pi" else mp.pi / 2
    return clausen.clausen_eval(p["m"], theta, ctx), clausen.clausen_special(p["m"], point, ctx)


def _conj_h(p, ctx):
    r, s = p["r"], p["s"]
    lhs = zeta_series.h_conjecture_rhs(r, s, ctx)
    if p.get("oracle"):
        return lhs, oracle.mzv_direct([2] * r + [3] + [2] * s, ctx)
    return lhs, identities.h_closed(r, s, ctx)


def _conj_t(p, ctx):
    r, s = p["r"], p["s"]
    lhs = zeta_series.t_conjecture_rhs(r, s, ctx)
    if p.get("oracle", 1) or s > 0:
        return lhs, oracle.tvalue_direct([2] * r + [3] + [2] * s, ctx)
    return lhs, identities.t_closed(r, ctx)


# exact evaluators return (lhs_series, rhs_series, extra_params)

def _eq1(p):
    n = p["order"]
    return series.arcsin_square_printed(n), series.ps_pow(series.ps_arcsin(n), 2), {}


def _eq2(p):
    n = p["order"]
    target = series.ps_pow(series.ps_arcsin(n), 4)
    printed = series.arcsin_fourth_printed(n)
    mismatch = printed.first_difference(target)
    extra = {"printed_matches": int(mismatch is None), "printed_first_mismatch": -1 if mismatch is None else mismatch,
             "corrected_matches": int(series.arcsin_fourth_printed(n, corrected=True) == target)}
    # the canonical form is the general even-power expansion at r = 2
    return series.arcsin_even_rhs(2, n), target, extra


def _eq3(p):
    n = p["order"]
    return series.arcsin_sixth_printed(n), series.ps_pow(series.ps_arcsin(n), 6), {}


def _eq4(p):
    n, r = p["order"], p["r"]
    return series.arcsin_even_rhs(r, n), series.ps_pow(series.ps_arcsin(n), 2 * r), {}


def _eq5(p):
    n, r = p["order"], p["r"]
    rhs = series.ps_pow(series.ps_arcsin(n).scale(2), 2 * r + 2).scale(Fraction(1, math.factorial(2 * r + 2)))
    return series.esym_generating_series(r, n), rhs, {}


def _eq6(p):
    n, r = p["order"], p["r"]
    return series.arcsin_odd_rhs(r, n), series.ps_pow(series.ps_arcsin(n), 2 * r + 1), {}


def _dim(p):
    k = p["k"]
    return Fraction(identities.dim_bound(k)), Fraction(identities.dim_bound_from_series(k)), {}


# --- grids --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ranges:
    r_max: int = 3
    s_max: int = 3
    p_max: int = 12


def _r_grid(lo):
    return lambda g: [{"r": r} for r in range(lo, max(g.r_max, lo) + 1)]


def _rs_grid(g):
    return [{"r": r, "s": s} for r in range(g.r_max + 1) for s in range(g.s_max + 1)]


def _orr_grid(g):
    return [{"p": p, "z_num": z.numerator, "z_den": z.denominator}
            for p in range(1, min(g.p_max, 6) + 1) for z in ORR_POINTS]


CATALOG: dict[str, Identity] = {}


def _register(ident: Identity):
    CATALOG[ident.id] = ident


_register(Identity("prop2.3", "theorem", _two_block_zeta, _r_grid(1), "zeta({2}^r) = pi^2r/(2r+1)! vs nested sum"))
_register(Identity("prop3.1", "theorem", _two_block_t, _r_grid(1), "t({2}^r) = pi^2r/(4^r (2r)!) vs nested sum"))
_register(Identity("thm2.1", "theorem", _h_general, _rs_grid, "closed form of zeta({2}^r,3,{2}^s) vs nested sum"))
_register(Identity("thm2.2", "theorem", _h_r0, _r_grid(0), "closed form of zeta({2}^r,3) vs nested sum"))
_register(Identity("thm2.4", "theorem", _h_series, _r_grid(0), "zeta-series form of zeta({2}^r,3) vs closed form"))
_register(Identity("thm3.2", "theorem", _t_series, _r_grid(0), "zeta-series form of t({2}^r,3) vs nested sum"))
_register(Identity("thm3.3", "theorem", _t_closed, _r_grid(0), "closed form of t({2}^r,3) vs nested sum"))
_register(Identity("lemma2.6", "theorem", _lemma,
                   lambda g: [{"p": p} for p in range(1, g.p_max + 1)], "-2 sum zeta(2n)/((2n+p)4^n) closed form"))
_register(Identity("thm2.5-orr", "theorem", _orr, _orr_grid, "Clausen form of int x^p cot x vs zeta series"))
_register(Identity("euler1775", "theorem", _euler, lambda g: [{}], "zeta(3) as a zeta(2n) series"))
_register(Identity("eq1", "exact", _eq1, lambda g: [{"order": SERIES_ORDER + 1}], "arcsin^2 expansion"))
_register(Identity("eq2", "exact", _eq2, lambda g: [{"order": SERIES_ORDER + 1}], "arcsin^4 expansion"))
_register(Identity("eq3", "exact", _eq3, lambda g: [{"order": SERIES_ORDER + 1}], "arcsin^6 expansion"))
_register(Identity("eq4", "exact", _eq4,
                   lambda g: [{"r": r, "order": SERIES_ORDER + 1} for r in range(1, max(g.r_max, 4) + 1)],
                   "even powers of arcsin via nested sums"))
_register(Identity("eq5", "exact", _eq5,
                   lambda g: [{"r": r, "order": SERIES_ORDER + 1} for r in range(0, max(g.r_max, 3) + 1)],
                   "even powers of arcsin via elementary symmetric functions"))
_register(Identity("eq6", "exact", _eq6,
                   lambda g: [{"r": r, "order": SERIES_ORDER + 1} for r in range(0, max(g.r_max, 3) + 1)],
                   "odd powers of arcsin via nested sums"))
_register(Identity("arcsin-sq-integral", "theorem", _arcsin_sq_integral, lambda g: [{}],
                   "int_0^1 arcsin^2(x)/x dx by quadrature"))
_register(Identity("clausen-special", "theorem", _clausen_special,
                   lambda g: [{"m": m, "at": at} for m in range(2, 7) for at in (1, 2)],
                   "Clausen series vs special values at pi and pi/2"))
_register(Identity("dim-bound", "exact", _dim, lambda g: [{"k": k} for k in range(SERIES_ORDER + 1)],
                   "d_k recurrence vs 1/(1-x^2-x^3)"))
_register(Identity("conj-H", "conjecture", _conj_h, _rs_grid, "zeta-series form of zeta({2}^r,3,{2}^s)"))
_register(Identity("conj-T", "conjecture", _conj_t, _rs_grid, "zeta-series form of t({2}^r,3,{2}^s)"))


class UnknownIdentity(KeyError):
    pass


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(x, digits, min_fixed=-5, max_fixed=5) if x != 0 else "0"


def _status(kind: str, agreed: int, wanted: int) -> str:
    if agreed >= wanted:
        return "supported" if kind == "conjecture" else "pass"
    return "fail"


def run_verification(identity_id: str, params: dict | None, ctx: PrecisionContext | None) -> VerificationReport:
    """Evaluate both sides of one catalog identity and fill a report.

    ``ctx`` may be None only for exact identities.
    """
    try:
        ident = CATALOG[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None
    params = dict(params or {})
    start = time.perf_counter()

    if ident.kind == "exact":
        lhs_s, rhs_s, extra = ident.evaluate(params)
        params.update(extra)
        if isinstance(lhs_s, Fraction):
            lhs_c, rhs_c = lhs_s, rhs_s
        else:
            where = lhs_s.first_difference(rhs_s)
            degree = where if where is not None else lhs_s.order - 1
            lhs_c, rhs_c = lhs_s[degree], rhs_s[degree]
            params["mismatch_degree"] = -1 if where is None else where
        equal = lhs_c == rhs_c
        return VerificationReport(
            identity_id, params, str(lhs_c), str(rhs_c), str(abs(lhs_c - rhs_c)),
            EXACT_AGREEMENT if equal else 0, 0, int((time.perf_counter() - start) * 1000),
            "pass" if equal else "fail")

    if ctx is None:
        raise ValueError(f"{identity_id} needs a precision context")
    show = ctx.target_digits + 5
    try:
        lhs, rhs = ident.evaluate(params, ctx)
    except (oracle.OracleError, ArithmeticError) as exc:
        log.warning("%s %s failed: %s", identity_id, params, exc)
        return VerificationReport(identity_id, params, "nan", f"error: {exc}", "nan", 0, ctx.bits,
                                  int((time.perf_counter() - start) * 1000), "fail")
    agreed = digits_agreed(lhs, rhs, ctx.bits)
    with ctx.workprec():
        diff = abs(lhs - rhs)
    return VerificationReport(
        identity_id, params, _fmt(lhs, show), _fmt(rhs, show), mpmath.nstr(diff, 6),
        agreed, ctx.bits, int((time.perf_counter() - start) * 1000), _status(ident.kind, agreed, ctx.target_digits))


def expand(ids: Iterable[str], ranges: Ranges) -> list[tuple[str, dict]]:
    items = []
    for identity_id in ids:
        if identity_id not in CATALOG:
            raise UnknownIdentity(identity_id)
        items.extend((identity_id, p) for p in CATALOG[identity_id].grid(ranges))
    return items


def _run_item(item):
    identity_id, params, digits, cache_dir = item
    if cache_dir is not None:
        use_cache(ConstantCache.in_directory(cache_dir))
    ctx = make_context(digits) if digits >= 1 else None
    return run_verification(identity_id, params, ctx)


def run_batch(items: list[tuple[str, dict]], digits: int, jobs: int = 1,
              cache_dir: str | None = None) -> list[VerificationReport]:
    """Run work items in order; with jobs > 1 they go to a process pool but
    results keep the input order."""
    payload = [(i, p, digits, cache_dir) for i, p in items]
    if jobs <= 1 or len(payload) <= 1:
        return [_run_item(x) for x in payload]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_item, payload))


def reports_to_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def reports_to_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for r in reports:
        d = r.to_dict()
        d["params"] = json.dumps(d["params"], sort_keys=True)
        writer.writerow([d[f] for f in REPORT_FIELDS])
    return buf.getvalue()


def all_passed(reports: list[VerificationReport]) -> bool:
    """True when every non-conjecture record passed."""
    return all(r.status == "pass" for r in reports if CATALOG[r.id].kind != "conjecture")
