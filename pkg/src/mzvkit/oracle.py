"""Ground-truth nested sums for multiple zeta, multiple t and multiple Hurwitz values.

Index convention: ``zeta(k_1, ..., k_r; a_1, ..., a_r)`` sums over
``1 <= n_1 < ... < n_r`` with ``(n_i + a_i)**-k_i``, so the last exponent sits
on the largest index.

Evaluation keeps the partial sums

    P_0(n) = 1,    P_j(n) = sum_{m < n} P_{j-1}(m) w_j(m)

up to a cutoff N by dynamic programming (O(N r) work), then closes every level
with its large-n asymptotic expansion.  Each P_j(n) is expanded as a finite
sum of ``c * n**-s * log(n)**l`` terms: the expansion of level j is the formal
Euler-Maclaurin indefinite sum of level j-1 times ``w_j``, plus a constant
fixed by matching the exact P_j(N).  The limit of P_r is that constant.
The error certificate is the change in the result when N is doubled.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
from mpmath import mp, mpf

from .numerics import PrecisionContext, bernoulli, to_mpf

DEFAULT_MAX_TERMS = 2 ** 22


class OracleError(ArithmeticError):
    """Requested accuracy not reachable within the term budget."""


@dataclass(frozen=True)
class Composition:
    exponents: tuple[int, ...]

    def __init__(self, exponents):
        exps = tuple(int(k) for k in exponents)
        if not exps:
            raise ValueError("composition must have depth >= 1")
        if any(k < 1 for k in exps):
            raise ValueError("exponents must be positive integers")
        if exps[-1] < 2:
            raise ValueError("last exponent must be >= 2 for convergence")
        object.__setattr__(self, "exponents", exps)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def depth(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)


@dataclass(frozen=True)
class ShiftVector:
    shifts: tuple[Fraction, ...]

    def __init__(self, shifts):
        vals = tuple(Fraction(a) for a in shifts)
        if any(a <= -1 for a in vals):
            raise ValueError("shifts must exceed -1")
        object.__setattr__(self, "shifts", vals)

    @classmethod
    def zeros(cls, depth: int) -> "ShiftVector":
        return cls([0] * depth)

    def __iter__(self):
        return iter(self.shifts)

    def __len__(self):
        return len(self.shifts)


@dataclass(frozen=True)
class NestedSumResult:
    value: mpf
    error_bound: mpf
    cutoff: int


@dataclass(frozen=True)
class _Level:
    """Summand of one nesting level: ``w(m) = scale * (m + shift)**-k``.

    ``direct`` evaluates the same weight for the exact head sums; it may use a
    different but equal formula (odd denominators for t-values).
    """

    k: int
    shift: Fraction
    scale: Fraction
    direct: Callable[[int], mpf]


def _as_composition(comp) -> Composition:
    return comp if isinstance(comp, Composition) else Composition(comp)


def _as_shifts(shifts) -> ShiftVector:
    return shifts if isinstance(shifts, ShiftVector) else ShiftVector(shifts)


# --- asymptotic expansions ---------------------------------------------------
# An expansion is a dict {(s, l): coeff} meaning sum coeff * n**-s * log(n)**l,
# truncated at s <= order.

def _weight_expansion(level: _Level, order: int) -> dict:
    """scale * (m + a)**-k = scale * sum_j binom(-k, j) a**j m**(-k-j)."""
    out = {}
    a = to_mpf(level.shift)
    c = to_mpf(level.scale)
    for j in range(order - level.k + 1):
        if j and level.shift == 0:
            break
        out[(level.k + j, 0)] = c
        c = c * (-level.k - j) / (j + 1) * a
    return out


def _multiply(a: dict, b: dict, order: int) -> dict:
    out = defaultdict(lambda: mpf(0))
    for (s1, l1), c1 in a.items():
        for (s2, l2), c2 in b.items():
            if s1 + s2 <= order:
                out[(s1 + s2, l1 + l2)] += c1 * c2
    return dict(out)


def _antiderivative(expr: dict) -> dict:
    """Formal antiderivative of sum c x^-s log^l x (no constant)."""
    out = defaultdict(lambda: mpf(0))
    for (s, l), c in expr.items():
        if s == 1:
            out[(0, l + 1)] += c / (l + 1)
            continue
        # x^{1-s} sum_i (-1)^i l!/(l-i)! log^{l-i} x / (1-s)^{i+1}
        falling = 1
        for i in range(l + 1):
            out[(s - 1, l - i)] += c * (-1) ** i * falling / mpf(1 - s) ** (i + 1)
            falling *= l - i
    return dict(out)


def _derivative(expr: dict) -> dict:
    out = defaultdict(lambda: mpf(0))
    for (s, l), c in expr.items():
        if s:
            out[(s + 1, l)] += -s * c
        if l:
            out[(s + 1, l - 1)] += l * c
    return dict(out)


def _indefinite_sum(g: dict, order: int) -> dict:
    """F with F(n+1) - F(n) ~ g(n), via Euler-Maclaurin:
    F = int g - g/2 + sum_i B_{2i}/(2i)! g^{(2i-1)}."""
    out = defaultdict(lambda: mpf(0))
    for key, c in _antiderivative(g).items():
        out[key] += c
    for key, c in g.items():
        out[key] -= c / 2
    deriv = _derivative(g)
    i = 1
    while deriv:
        factor = to_mpf(bernoulli(2 * i)) / math.factorial(2 * i)
        for key, c in deriv.items():
            if key[0] <= order:
                out[key] += factor * c
        deriv = {k: c for k, c in _derivative(_derivative(deriv)).items() if k[0] <= order}
        i += 1
    return {k: c for k, c in out.items() if k[0] <= order}


def _evaluate(expr: dict, n: int) -> mpf:
    x = mpf(n)
    lg = mp.log(x)
    return mpmath.fsum(c * x ** (-s) * lg ** l for (s, l), c in expr.items())


# --- evaluation ----------------------------------------------------------------

def _head_sums(levels: Sequence[_Level], N: int) -> list:
    """Exact P_j(N) for j = 0..r."""
    r = len(levels)
    P = [mpf(1)] + [mpf(0)] * r
    for m in range(1, N):
        for j in range(r, 0, -1):
            P[j] += P[j - 1] * levels[j - 1].direct(m)
    return P


def _limit(levels: Sequence[_Level], N: int, order: int) -> mpf:
    heads = _head_sums(levels, N)
    expansion = {(0, 0): mpf(1)}
    for j, level in enumerate(levels, start=1):
        g = _multiply(expansion, _weight_expansion(level, order), order)
        expansion = _indefinite_sum(g, order)
        constant = heads[j] - _evaluate(expansion, N)
        expansion[(0, 0)] = expansion.get((0, 0), mpf(0)) + constant
    # every non-constant term of the outermost expansion decays to zero
    return expansion[(0, 0)]


def _nested(levels: Sequence[_Level], ctx: PrecisionContext, target_abs_error,
            max_terms: int) -> NestedSumResult:
    with ctx.workprec():
        target = ctx.eps if target_abs_error is None else mpf(target_abs_error)
    if target <= 0:
        raise ValueError("target_abs_error must be positive")
    digits = max(int(-mpmath.log10(target)) + 3, ctx.target_digits + ctx.guard_digits)
    N = max(16, digits)
    order = digits + 8
    max_shift = max(abs(lv.shift) for lv in levels)
    while N <= max(max_terms, 16) // 2:
        with mp.workprec(ctx.bits + (2 * N).bit_length() + 10):
            coarse = _limit(levels, N, order)
            fine = _limit(levels, 2 * N, order)
            err = abs(fine - coarse) + mpf(2) ** (-ctx.bits) * (1 + abs(fine))
        if err <= target and 2 * N > 4 * max_shift:
            with ctx.workprec():
                return NestedSumResult(+fine, +err, 2 * N)
        N *= 2
        order += 4
    raise OracleError(f"could not reach |error| <= {mpmath.nstr(target, 3)} within {max_terms} terms")


def _hurwitz_levels(comp: Composition, shifts: ShiftVector) -> list[_Level]:
    levels = []
    for k, a in zip(comp, shifts):
        a = Fraction(a)

        # m + a = (m q + p) / q, rounded once at the caller's precision
        def direct(m, k=k, num=a.numerator, den=a.denominator):
            return (mpf(m * den + num) / den) ** (-k)

        levels.append(_Level(k, a, Fraction(1), direct))
    return levels


def hurwitz_mzv_result(comp, shifts, ctx: PrecisionContext, target_abs_error=None,
                       max_terms: int = DEFAULT_MAX_TERMS) -> NestedSumResult:
    comp = _as_composition(comp)
    shifts = _as_shifts(shifts)
    if len(comp) != len(shifts):
        raise ValueError("composition and shift vector differ in length")
    return _nested(_hurwitz_levels(comp, shifts), ctx, target_abs_error, max_terms)


def hurwitz_mzv_direct(comp, shifts, ctx: PrecisionContext, target_abs_error=None,
                       max_terms: int = DEFAULT_MAX_TERMS) -> mpf:
    """Multiple Hurwitz zeta value with |error| <= target_abs_error (default 10**-digits)."""
    return hurwitz_mzv_result(comp, shifts, ctx, target_abs_error, max_terms).value


def mzv_result(comp, ctx, target_abs_error=None, max_terms=DEFAULT_MAX_TERMS) -> NestedSumResult:
    comp = _as_composition(comp)
    return hurwitz_mzv_result(comp, ShiftVector.zeros(comp.depth), ctx, target_abs_error, max_terms)


def mzv_direct(comp, ctx, target_abs_error=None, max_terms=DEFAULT_MAX_TERMS) -> mpf:
    return mzv_result(comp, ctx, target_abs_error, max_terms).value


def tvalue_result(comp, ctx, target_abs_error=None, max_terms=DEFAULT_MAX_TERMS) -> NestedSumResult:
    comp = _as_composition(comp)
    levels = []
    for k in comp:
        # (2m-1)^-k summed directly; the tail uses 2^-k (m - 1/2)^-k
        levels.append(_Level(k, Fraction(-1, 2), Fraction(1, 2 ** k),
                             lambda m, k=k: mpf(2 * m - 1) ** (-k)))
    return _nested(levels, ctx, target_abs_error, max_terms)


def tvalue_direct(comp, ctx, target_abs_error=None, max_terms=DEFAULT_MAX_TERMS) -> mpf:
    """Multiple t-value: nested sum over odd denominators 2n_i - 1."""
    return tvalue_result(comp, ctx, target_abs_error, max_terms).value


# --- raw truncations, for tail checks ---------------------------------------------

def raw_partial_sum(comp, shifts, N: int, ctx: PrecisionContext) -> mpf:
    """Plain truncation: all indices below N, no tail correction."""
    comp = _as_composition(comp)
    shifts = _as_shifts(shifts)
    with ctx.workprec(N.bit_length() + 10):
        value = _head_sums(_hurwitz_levels(comp, shifts), N)[-1]
    with ctx.workprec():
        return +value


def tail_bound(comp, shifts, N: int, ctx: PrecisionContext) -> mpf:
    """Upper bound on (limit - raw_partial_sum(N)).

    The missing terms all have n_r >= N.  The inner nested sum is increasing
    in n_r and bounded by the product of its depth-one sums, and the outer sum
    over n_r >= N is bounded by its first term plus an integral.
    """
    comp = _as_composition(comp)
    shifts = _as_shifts(shifts)
    if any(k < 2 for k in comp):
        raise ValueError("tail bound needs every exponent >= 2")

    def depth_one_tail(k, a, start):
        x = mpf(start) + to_mpf(a)
        return x ** (-k) + x ** (1 - k) / (k - 1)

    with ctx.workprec():
        inner = mpf(1)
        for k, a in list(zip(comp, shifts))[:-1]:
            inner *= depth_one_tail(k, a, 1)
        k, a = comp.exponents[-1], shifts.shifts[-1]
        return inner * depth_one_tail(k, a, N)
