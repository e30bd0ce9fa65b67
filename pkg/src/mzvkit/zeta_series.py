"""Rational zeta series sum_n zeta(2n) / (prod of consecutive factors) / 4^n.

All of these come from the cotangent expansion

    u cot u = -2 sum_{n>=0} zeta(2n) (u/pi)^(2n),    |u| < pi,

whose n = 0 term needs zeta(0) = -1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .numerics import PrecisionContext, log2, to_mpf, zeta_int


@dataclass(frozen=True)
class RationalZetaSeriesSpec:
    """scale * sum_{n>=0} zeta(2n) / prod_{j=0..s} (2n+p+j) / 4^n."""

    p: int
    s: int = 0
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.s < 0:
            raise ValueError("s must be >= 0")
        object.__setattr__(self, "scale", Fraction(self.scale))


def _series_terms(ctx: PrecisionContext) -> int:
    # |term_n| <= 2 * 4^-n, so the tail past N is below (8/3) 4^-N
    return math.ceil((ctx.bits + 4) / 2) + 2


def cot_partial(u, ctx: PrecisionContext, terms: int) -> mpf:
    """Partial sum of -2 sum_{n<terms} zeta(2n) (u/pi)^(2n), which tends to u cot u."""
    with ctx.workprec(10):
        u = mpf(u)
        if abs(u) >= mp.pi:
            raise ValueError("need |u| < pi")
        x = (u / mp.pi) ** 2
        total = mpf(0)
        power = mpf(1)
        for n in range(terms):
            total += zeta_int(2 * n, ctx) * power
            power *= x
        total *= -2
    with ctx.workprec():
        return +total


def rzs_eval(spec: RationalZetaSeriesSpec | int, ctx: PrecisionContext, s: int | None = None,
             scale=None, terms: int | None = None) -> mpf:
    """Evaluate a rational zeta series; accepts a RationalZetaSeriesSpec or ``(p, ctx, s, scale)``."""
    if not isinstance(spec, RationalZetaSeriesSpec):
        spec = RationalZetaSeriesSpec(spec, 0 if s is None else s, Fraction(1) if scale is None else scale)
    n_terms = _series_terms(ctx) if terms is None else terms
    with ctx.workprec(10):
        acc = []
        quarter = mpf(1)
        for n in range(n_terms):
            denom = 1
            for j in range(spec.s + 1):
                denom *= 2 * n + spec.p + j
            acc.append(zeta_int(2 * n, ctx) * quarter / denom)
            quarter /= 4
        total = mpmath.fsum(acc) * to_mpf(spec.scale)
    with ctx.workprec():
        return +total


def lemma26_rhs(p: int, ctx: PrecisionContext) -> mpf:
    """Closed form of -2 sum zeta(2n)/((2n+p) 4^n):

        log 2 + sum_{k=1}^{p//2} p! (-1)^k (4^k - 1) zeta(2k+1) / ((p-2k)! (2 pi)^(2k))
              + [p even] p! (-1)^(p/2) zeta(p+1) / pi^p
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    with ctx.workprec(10):
        total = log2(ctx)
        two_pi = 2 * mp.pi
        for k in range(1, p // 2 + 1):
            coeff = Fraction(math.factorial(p) * (-1) ** k * (4 ** k - 1), math.factorial(p - 2 * k))
            total += to_mpf(coeff) * zeta_int(2 * k + 1, ctx) / two_pi ** (2 * k)
        if p % 2 == 0:
            total += math.factorial(p) * (-1) ** (p // 2) * zeta_int(p + 1, ctx) / mp.pi ** p
    with ctx.workprec():
        return +total


def euler1775(ctx: PrecisionContext, terms: int | None = None) -> mpf:
    """zeta(3) = -2 pi^2 sum_{n>=0} zeta(2n) / ((2n+2)(2n+3) 4^n)."""
    series = rzs_eval(RationalZetaSeriesSpec(2, 1), ctx, terms=terms)
    with ctx.workprec():
        return -2 * mp.pi ** 2 * series


def h_series(r: int, ctx: PrecisionContext) -> mpf:
    """zeta({2}^r, 3) = -4(2r+3) S * zeta({2}^(r+1)),
    S = sum zeta(2n)/((2n+2r+2)(2n+2r+3) 4^n) and zeta({2}^m) = pi^(2m)/(2m+1)!."""
    if r < 0:
        raise ValueError("r must be >= 0")
    series = rzs_eval(RationalZetaSeriesSpec(2 * r + 2, 1), ctx)
    with ctx.workprec(10):
        value = -4 * (2 * r + 3) * series * mp.pi ** (2 * r + 2) / math.factorial(2 * r + 3)
    with ctx.workprec():
        return +value


def t_series(r: int, ctx: PrecisionContext) -> mpf:
    """t({2}^r, 3) = -4(r+1) S * t({2}^(r+1)),
    S = sum zeta(2n)/((2n+2r+1)(2n+2r+2) 4^n) and t({2}^m) = pi^(2m)/(4^m (2m)!)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    series = rzs_eval(RationalZetaSeriesSpec(2 * r + 1, 1), ctx)
    with ctx.workprec(10):
        value = (-4 * (r + 1) * series * mp.pi ** (2 * r + 2)
                 / (4 ** (r + 1) * math.factorial(2 * r + 2)))
    with ctx.workprec():
        return +value


def h_conjecture_rhs(r: int, s: int, ctx: PrecisionContext) -> mpf:
    """-4 pi^(2r+2s+2)/(2r+2)! * sum zeta(2n) / ((2n+2r+2)...(2n+2r+2s+3) 4^n)."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be >= 0")
    # the product runs over 2s+2 consecutive factors, i.e. 2s+1 beyond the first
    wide = ctx.widen(4 * (r + s) + 8)
    series = rzs_eval(RationalZetaSeriesSpec(2 * r + 2, 2 * s + 1), wide)
    with wide.workprec():
        value = -4 * mp.pi ** (2 * r + 2 * s + 2) / math.factorial(2 * r + 2) * series
    with ctx.workprec():
        return +value


def t_conjecture_rhs(r: int, s: int, ctx: PrecisionContext) -> mpf:
    """-2/(2r+1)! (pi/2)^(2r+2s+2) * sum zeta(2n) / ((2n+2r+1)...(2n+2r+2s+2) 4^n)."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be >= 0")
    wide = ctx.widen(4 * (r + s) + 8)
    series = rzs_eval(RationalZetaSeriesSpec(2 * r + 1, 2 * s + 1), wide)
    with wide.workprec():
        value = -2 * (mp.pi / 2) ** (2 * r + 2 * s + 2) / math.factorial(2 * r + 1) * series
    with ctx.workprec():
        return +value
