"""Exact rational power series for integer powers of arcsin.

Everything here is exact (``fractions.Fraction``) except :func:`pfq_truncated`,
which sums a hypergeometric series numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import NamedTuple, Sequence

from mpmath import mpf

from .numerics import PiPowerValue, PrecisionContext, to_mpf


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients of x**0 .. x**(order-1); higher terms are unknown."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coefficients))

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0] * order)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, degree: int) -> Fraction:
        if not 0 <= degree < self.order:
            raise IndexError(f"degree {degree} outside truncation order {self.order}")
        return self.coefficients[degree]

    def _check(self, other: "PowerSeries"):
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(a - b for a, b in zip(self.coefficients, other.coefficients))

    def scale(self, factor) -> "PowerSeries":
        factor = Fraction(factor)
        return PowerSeries(c * factor for c in self.coefficients)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "PowerSeries":
        return ps_pow(self, m)

    def first_difference(self, other: "PowerSeries") -> int | None:
        """Lowest degree where the two series differ, or None."""
        self._check(other)
        for i, (a, b) in enumerate(zip(self.coefficients, other.coefficients)):
            if a != b:
                return i
        return None


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    a._check(b)
    n = a.order
    out = [Fraction(0)] * n
    for i, ai in enumerate(a.coefficients):
        if ai:
            for j in range(n - i):
                if b.coefficients[j]:
                    out[i + j] += ai * b.coefficients[j]
    return PowerSeries(out)


def ps_pow(a: PowerSeries, m: int) -> PowerSeries:
    if m < 0:
        raise ValueError("negative powers are not supported")
    result = PowerSeries([1] + [0] * (a.order - 1))
    base = a
    while m:
        if m & 1:
            result = ps_mul(result, base)
        m >>= 1
        if m:
            base = ps_mul(base, base)
    return result


def ps_inverse(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; needs a nonzero constant term."""
    if a[0] == 0:
        raise ZeroDivisionError("series has no constant term")
    out = [Fraction(0)] * a.order
    out[0] = 1 / a[0]
    for n in range(1, a.order):
        acc = sum((a.coefficients[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out[n] = -acc / a[0]
    return PowerSeries(out)


def ps_arcsin(order: int) -> PowerSeries:
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fraction(0)] * order
    for n in range((order - 1) // 2 + 1):
        if 2 * n + 1 < order:
            coeffs[2 * n + 1] = Fraction(comb(2 * n, n), 4 ** n * (2 * n + 1))
    return PowerSeries(coeffs)


# --- nested inner sums -----------------------------------------------------------

def esym_values(r: int, n: int) -> Fraction:
    """e_r(1, 1/2^2, ..., 1/(n-1)^2) by the recurrence
    e_r(n) = e_r(n-1) + e_{r-1}(n-1)/(n-1)^2."""
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    return _esym_table(r, n, odd=False)[n - 1][r]


def esym_odd_values(r: int, n: int) -> Fraction:
    """e_r(1, 1/3^2, ..., 1/(2n-1)^2): the sum over 0 <= n_1 < ... < n_r < n
    of prod (2 n_i + 1)^-2."""
    if r < 0 or n < 0:
        raise ValueError("need r >= 0 and n >= 0")
    return _esym_table(r, n + 1, odd=True)[n][r]


def _esym_table(r: int, n_max: int, odd: bool) -> list[list[Fraction]]:
    """Row i holds e_0..e_r over the first i arguments."""
    row = [Fraction(1)] + [Fraction(0)] * r
    rows = [row]
    for i in range(1, n_max):
        x = Fraction(1, (2 * i - 1) ** 2) if odd else Fraction(1, i * i)
        row = [row[0]] + [row[j] + row[j - 1] * x for j in range(1, r + 1)]
        rows.append(row)
    return rows


# --- arcsin power expansions -------------------------------------------------------

def arcsin_even_rhs(r: int, order: int) -> PowerSeries:
    """arcsin(x)**(2r) assembled from the nested-sum expansion

        (2r)!/4^r * sum_n 4^n/(n^2 C(2n,n)) x^(2n) * e_{r-1}(1, ..., 1/(n-1)^2)
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs = [Fraction(0)] * order
    n_max = (order - 1) // 2
    table = _esym_table(r - 1, max(n_max, 1) + 1, odd=False)
    pre = Fraction(factorial(2 * r), 4 ** r)
    for n in range(1, n_max + 1):
        coeffs[2 * n] = pre * Fraction(4 ** n, n * n * comb(2 * n, n)) * table[n - 1][r - 1]
    return PowerSeries(coeffs)


def arcsin_odd_rhs(r: int, order: int) -> PowerSeries:
    """arcsin(x)**(2r+1) from

        (2r+1)! * sum_n C(2n,n)/((2n+1) 4^n) x^(2n+1) * sum_{0<=n_1<..<n_r<n} prod (2n_i+1)^-2
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    coeffs = [Fraction(0)] * order
    n_max = (order - 2) // 2
    table = _esym_table(r, max(n_max, 0) + 1, odd=True)
    pre = factorial(2 * r + 1)
    for n in range(n_max + 1):
        coeffs[2 * n + 1] = pre * Fraction(comb(2 * n, n), (2 * n + 1) * 4 ** n) * table[n][r]
    return PowerSeries(coeffs)


def arcsin_square_printed(order: int) -> PowerSeries:
    """sum 2^(2n-1)/(n^2 C(2n,n)) x^(2n)."""
    coeffs = [Fraction(0)] * order
    for n in range(1, (order - 1) // 2 + 1):
        coeffs[2 * n] = Fraction(2 ** (2 * n - 1), n * n * comb(2 * n, n))
    return PowerSeries(coeffs)


def arcsin_fourth_printed(order: int, corrected: bool = False) -> PowerSeries:
    """3/2 sum H2(n-1) x^(2n) / (2^(2n) n^2 C(2n,n)), H2(m) = sum_{j<=m} 1/j^2.

    As printed the 2^(2n) sits in the denominator, which is off by 16^n from
    arcsin^4; ``corrected=True`` moves it to the numerator.
    """
    coeffs = [Fraction(0)] * order
    for n in range(1, (order - 1) // 2 + 1):
        inner = esym_values(1, n)
        geometric = Fraction(4 ** n) if corrected else Fraction(1, 4 ** n)
        coeffs[2 * n] = Fraction(3, 2) * inner * geometric / (n * n * comb(2 * n, n))
    return PowerSeries(coeffs)


def arcsin_sixth_printed(order: int) -> PowerSeries:
    """45/4 sum (sum_{m<n} 1/m^2 sum_{p<m} 1/p^2) 4^n/(C(2n,n) n^2) x^(2n)."""
    coeffs = [Fraction(0)] * order
    for n in range(1, (order - 1) // 2 + 1):
        inner = sum((Fraction(1, m * m) * esym_values(1, m) for m in range(1, n)), Fraction(0))
        coeffs[2 * n] = Fraction(45, 4) * inner * Fraction(4 ** n, comb(2 * n, n) * n * n)
    return PowerSeries(coeffs)


def esym_generating_series(r: int, order: int) -> PowerSeries:
    """sum (2x)^(2n)/(n^2 C(2n,n)) e_r(1, ..., 1/(n-1)^2); equals (2 arcsin x)^(2r+2)/(2r+2)!."""
    coeffs = [Fraction(0)] * order
    n_max = (order - 1) // 2
    table = _esym_table(r, max(n_max, 1) + 1, odd=False)
    for n in range(1, n_max + 1):
        coeffs[2 * n] = Fraction(4 ** n, n * n * comb(2 * n, n)) * table[n - 1][r]
    return PowerSeries(coeffs)


# --- hypergeometric partial sums ----------------------------------------------------

class PFQResult(NamedTuple):
    value: mpf
    last_term: mpf
    terms: int


def pfq_truncated(upper: Sequence, lower: Sequence, x, ctx: PrecisionContext, terms: int) -> PFQResult:
    """Partial sum of pFq(upper; lower; x) over n < terms.

    The series must be summable: |x| < 1, no lower parameter a non-positive
    integer, and p <= q + 1 unless an upper parameter terminates it.
    """
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    if any(b <= 0 and b.denominator == 1 for b in lower):
        raise ValueError("lower parameter is a non-positive integer")
    terminating = any(a <= 0 and a.denominator == 1 for a in upper)
    if len(upper) > len(lower) + 1 and not terminating:
        raise ValueError("pFq with p > q+1 diverges")
    with ctx.workprec(10):
        x = to_mpf(x) if isinstance(x, (int, Fraction)) else mpf(x)
        if abs(x) >= 1 and not terminating:
            raise ValueError("|x| must be < 1")
        total = mpf(0)
        term = mpf(1)
        last = mpf(0)
        used = 0
        for n in range(terms):
            total += term
            last = term
            used = n + 1
            ratio = mpf(1)
            for a in upper:
                ratio *= to_mpf(a + n)
            for b in lower:
                ratio /= to_mpf(b + n)
            term = term * ratio * x / (n + 1)
            if term == 0:
                break
    with ctx.workprec():
        return PFQResult(+total, abs(+last), used)


# --- Wallis integrals ------------------------------------------------------------------

def wallis_integral(n: int, parity: str) -> PiPowerValue:
    """int_0^{pi/2} sin^(2n) t dt (parity 'even') or sin^(2n+1) t dt ('odd')."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if parity == "even":
        return PiPowerValue(Fraction(comb(2 * n, n), 2 ** (2 * n + 1)), 1)
    if parity == "odd":
        return PiPowerValue(Fraction(2 ** (2 * n), (2 * n + 1) * comb(2 * n, n)), 0)
    raise ValueError("parity must be 'even' or 'odd'")


def dim_generating_series(order: int) -> PowerSeries:
    """Exact expansion of 1/(1 - x^2 - x^3)."""
    denom = [Fraction(0)] * order
    denom[0] = Fraction(1)
    if order > 2:
        denom[2] = Fraction(-1)
    if order > 3:
        denom[3] = Fraction(-1)
    return ps_inverse(PowerSeries(denom))
