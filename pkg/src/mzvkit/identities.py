"""Closed forms for zeta({2}^r, 3, {2}^s) and t({2}^r, 3), plus exact coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mpf

from .numerics import PiPowerValue, PrecisionContext, to_mpf, zeta_int
from .series import dim_generating_series


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def coeff_c(r: int, s: int, k: int) -> Fraction:
    """C(2k, 2r+2) - (1 - 2^-2k) C(2k, 2s+1)."""
    if min(r, s, k) < 0:
        raise ValueError("r, s, k must be non-negative")
    return _binom(2 * k, 2 * r + 2) - (1 - Fraction(1, 4 ** k)) * _binom(2 * k, 2 * s + 1)


def coeff_c_r0(r: int, k: int) -> Fraction:
    """s = 0 specialisation, written with 2k in place of C(2k, 1)."""
    if min(r, k) < 0:
        raise ValueError("r, k must be non-negative")
    return _binom(2 * k, 2 * r + 2) - (1 - Fraction(1, 4 ** k)) * 2 * k


def coeff_d(r: int, k: int) -> Fraction:
    """C(2k, 2r+1) + (1 - 2^-2k) 2k."""
    if min(r, k) < 0:
        raise ValueError("r, k must be non-negative")
    return _binom(2 * k, 2 * r + 1) + (1 - Fraction(1, 4 ** k)) * 2 * k


def zeta_two_block(r: int) -> PiPowerValue:
    """zeta({2}^r) = pi^(2r)/(2r+1)!; the empty block is 1."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return PiPowerValue(Fraction(1, math.factorial(2 * r + 1)), 2 * r)


def t_two_block(r: int) -> PiPowerValue:
    """t({2}^r) = pi^(2r)/(4^r (2r)!)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return PiPowerValue(Fraction(1, 4 ** r * math.factorial(2 * r)), 2 * r)


def _combine(ctx: PrecisionContext, pieces) -> mpf:
    """Sum of rational * zeta(odd) * pi-power pieces."""
    # the pieces cancel heavily as the weight grows
    wide = ctx.widen(32)
    with wide.workprec():
        total = mpmath.fsum(to_mpf(q) * zeta_int(n, wide) * block.evaluate(wide) for q, n, block in pieces)
    with ctx.workprec():
        return +total


def h_closed(r: int, s: int, ctx: PrecisionContext) -> mpf:
    """zeta({2}^r, 3, {2}^s) = 2 sum_{k=1}^{r+s+1} (-1)^k c^k_{r,s} zeta(2k+1) zeta({2}^(r+s+1-k))."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be >= 0")
    K = r + s + 1
    return _combine(ctx, [(2 * (-1) ** k * coeff_c(r, s, k), 2 * k + 1, zeta_two_block(K - k))
                          for k in range(1, K + 1)])


def h_closed_r0(r: int, ctx: PrecisionContext) -> mpf:
    if r < 0:
        raise ValueError("r must be >= 0")
    return _combine(ctx, [(2 * (-1) ** k * coeff_c_r0(r, k), 2 * k + 1, zeta_two_block(r + 1 - k))
                          for k in range(1, r + 2)])


def t_closed(r: int, ctx: PrecisionContext) -> mpf:
    """t({2}^r, 3) = sum_{k=1}^{r+1} (-1)^(k+1) d^k_r 4^-k zeta(2k+1) t({2}^(r+1-k))."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _combine(ctx, [((-1) ** (k + 1) * coeff_d(r, k) / 4 ** k, 2 * k + 1, t_two_block(r + 1 - k))
                          for k in range(1, r + 2)])


def delta_binomial_identity(r: int, k: int) -> bool:
    """2k [k = r+1] / C(2r+2, 2k-1) == C(2k, 2r+2) for 1 <= k <= r+1."""
    lhs = Fraction(2 * k, comb(2 * r + 2, 2 * k - 1)) if k == r + 1 else Fraction(0)
    return lhs == _binom(2 * k, 2 * r + 2)


def dim_bound(k: int) -> int:
    """Coefficient of x^k in 1/(1 - x^2 - x^3): d_k = d_{k-2} + d_{k-3}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    d = [1, 0, 1]
    while len(d) <= k:
        d.append(d[-2] + d[-3])
    return d[k]


def dim_bound_from_series(k: int) -> int:
    coeff = dim_generating_series(k + 1)[k]
    assert coeff.denominator == 1
    return int(coeff)
