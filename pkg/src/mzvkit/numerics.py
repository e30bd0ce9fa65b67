"""Precision contexts, exact Bernoulli numbers, and integer zeta / beta values.

All real arithmetic goes through :mod:`mpmath`.  Each public routine takes a
:class:`PrecisionContext` and evaluates under ``mpmath.workprec(ctx.bits)``,
so the returned ``mpf`` carries that context's precision.  mpmath keeps its
precision in process-global state; run parallel work in separate processes.
"""

from __future__ import annotations

import math
import os
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import to_str

LOG2_10 = math.log2(10)
DEFAULT_GUARD_DIGITS = 10


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in bits plus the decimal target it was derived from."""

    bits: int
    target_digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be >= 1")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")
        need = required_bits(self.target_digits, self.guard_digits)
        if self.bits < need:
            raise ValueError(f"{self.bits} bits cannot carry {self.target_digits}+{self.guard_digits} digits "
                             f"(need {need})")

    @property
    def eps(self) -> mpf:
        """Requested absolute accuracy, 10**-target_digits."""
        with mp.workprec(self.bits):
            return mpf(10) ** (-self.target_digits)

    @property
    def work_eps(self) -> mpf:
        with mp.workprec(self.bits):
            return mpf(10) ** (-(self.target_digits + self.guard_digits))

    def workprec(self, extra_bits: int = 0):
        return mp.workprec(self.bits + extra_bits)

    def widen(self, extra_bits: int) -> "PrecisionContext":
        return PrecisionContext(self.bits + extra_bits, self.target_digits, self.guard_digits)


def required_bits(target_digits: int, guard_digits: int) -> int:
    return math.ceil((target_digits + guard_digits) * LOG2_10)


def make_context(target_digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS) -> PrecisionContext:
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    return PrecisionContext(required_bits(target_digits, guard_digits), target_digits, guard_digits)


@dataclass(frozen=True)
class PiPowerValue:
    """An exact value ``coefficient * pi**pi_exponent``."""

    coefficient: Fraction
    pi_exponent: int

    def __post_init__(self):
        if self.pi_exponent < 0:
            raise ValueError("pi_exponent must be non-negative")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def __mul__(self, other):
        if isinstance(other, PiPowerValue):
            return PiPowerValue(self.coefficient * other.coefficient, self.pi_exponent + other.pi_exponent)
        if isinstance(other, (int, Fraction)):
            return PiPowerValue(self.coefficient * other, self.pi_exponent)
        return NotImplemented

    __rmul__ = __mul__

    def evaluate(self, ctx: PrecisionContext) -> mpf:
        with ctx.workprec():
            return to_mpf(self.coefficient) * mp.pi ** self.pi_exponent

    def __str__(self):
        if self.pi_exponent == 0:
            return str(self.coefficient)
        return f"({self.coefficient})*pi^{self.pi_exponent}"


def to_mpf(q) -> mpf:
    """Round a Fraction (or int) to an mpf at the current working precision."""
    q = Fraction(q)
    return mpf(q.numerator) / q.denominator


# --- exact rationals -------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=None)
def zeta_even_over_pi(m: int) -> Fraction:
    """Rational zeta(2m)/pi**(2m); m = 0 gives zeta(0) = -1/2."""
    if m < 0:
        raise ValueError("m must be non-negative")
    sign = -1 if m % 2 == 0 else 1
    return sign * bernoulli(2 * m) * 2 ** (2 * m) / (2 * math.factorial(2 * m))


# --- constants ---------------------------------------------------------------

_CACHE_LOCK = threading.Lock()
_active_cache: "ConstantCache | None" = None


def use_cache(cache: "ConstantCache | None") -> None:
    """Install a persistent constant cache (or remove it with ``None``)."""
    global _active_cache
    with _CACHE_LOCK:
        if cache is not _active_cache:
            # values memoised in-process would otherwise never reach the new cache
            _zeta_int_cached.cache_clear()
        _active_cache = cache


def active_cache() -> "ConstantCache | None":
    return _active_cache


def pi(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return +mp.pi


def log2(ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return +mp.ln2


def zeta_int(n: int, ctx: PrecisionContext) -> mpf:
    """Riemann zeta at a non-negative integer other than 1.

    Even arguments use the exact Bernoulli route, zeta(0) = -1/2 included.
    Odd arguments sum directly with an Euler-Maclaurin tail.
    """
    if n == 1:
        raise ValueError("zeta has a pole at 1")
    if n < 0:
        raise ValueError("negative arguments are not supported")
    return _zeta_int_cached(n, ctx.bits, ctx.target_digits, ctx.guard_digits)


@lru_cache(maxsize=4096)
def _zeta_int_cached(n, bits, target_digits, guard_digits):
    ctx = PrecisionContext(bits, target_digits, guard_digits)
    if n % 2 == 0:
        with ctx.workprec():
            return to_mpf(zeta_even_over_pi(n // 2)) * mp.pi ** n
    cache = _active_cache
    name = f"zeta_{n}"
    if cache is not None:
        hit = cache.get(name, ctx)
        if hit is not None:
            return hit
    value = zeta_euler_maclaurin(n, ctx)
    if cache is not None:
        cache.put(name, ctx, value)
    return value


def zeta_euler_maclaurin(s: int, ctx: PrecisionContext, cutoff: int | None = None) -> mpf:
    """Sum n**-s for n < N and close the tail with Euler-Maclaurin.

    For real s > 1 the remainder after the last correction kept is bounded by
    the first correction dropped, so the loop stops once that falls below the
    working tolerance.
    """
    if s <= 1:
        raise ValueError("Euler-Maclaurin route needs s > 1")
    # the corrections bottom out near exp(-2 pi N), so N scales with the bit count
    N = cutoff if cutoff is not None else max(10, math.ceil(ctx.bits * math.log(2) / (2 * math.pi)) + 4)
    with ctx.workprec(8 + N.bit_length()):
        tol = mpf(2) ** (-ctx.bits - 4)
        head = mpmath.fsum(mpf(k) ** (-s) for k in range(1, N))
        Nf = mpf(N)
        tail = Nf ** (1 - s) / (s - 1) + Nf ** (-s) / 2
        # rising factorial (s)_{2i-1} times N^{-s-2i+1}
        rising = mpf(s)
        power = Nf ** (-s - 1)
        i = 1
        while True:
            term = to_mpf(bernoulli(2 * i)) / math.factorial(2 * i) * rising * power
            if abs(term) < tol:
                break
            tail += term
            if i > 4 * N:
                raise ArithmeticError("Euler-Maclaurin corrections stopped shrinking")
            rising *= (s + 2 * i - 1) * (s + 2 * i)
            power /= Nf * Nf
            i += 1
        result = head + tail
    with ctx.workprec():
        return +result


def beta_dirichlet(n: int, ctx: PrecisionContext) -> mpf:
    """Dirichlet beta(n) = sum (-1)^k/(2k+1)^n.

    Uses the Cohen-Rodriguez Villegas-Zagier acceleration, which gains
    log10(3+sqrt 8) ~ 0.77 digits per term.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    terms = math.ceil((ctx.bits + 10) / math.log2(3 + math.sqrt(8))) + 2
    with ctx.workprec(20):
        d = (3 + mp.sqrt(8)) ** terms
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        s = mpf(0)
        for k in range(terms):
            c = b - c
            s += c * mpf(2 * k + 1) ** (-n)
            b = b * (k + terms) * (k - terms) / ((k + mpf(1) / 2) * (k + 1))
        result = s / d
    with ctx.workprec():
        return +result


# --- persistent cache --------------------------------------------------------

CACHE_HEADER = "MZVCACHE 1"
CACHE_FILENAME = "constants.tsv"


def _valid_name(name: str) -> bool:
    if name in ("pi", "log2"):
        return True
    prefix, _, tail = name.partition("_")
    return prefix in ("zeta", "beta") and tail.isdigit()


class ConstantCache:
    """Decimal strings of constants keyed by (name, bits), persisted as TSV.

    Reads and writes are guarded by a lock; concurrent writers of the same key
    store identical strings, so last-writer-wins is harmless.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._entries: dict[tuple[str, int], str] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self._load()

    @classmethod
    def in_directory(cls, directory: str | os.PathLike) -> "ConstantCache":
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        return cls(directory / CACHE_FILENAME)

    def _load(self):
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
            if not lines or lines[0].strip() != CACHE_HEADER:
                raise ValueError("missing header")
            entries = {}
            for line in lines[1:]:
                if not line.strip():
                    continue
                name, bits, value = line.split("\t")
                if not _valid_name(name):
                    raise ValueError(f"bad constant name {name!r}")
                mpf(value)  # parse check
                entries[(name, int(bits))] = value
        except (OSError, ValueError, UnicodeDecodeError) as exc:
            warnings.warn(f"ignoring corrupt constant cache {self.path}: {exc}", RuntimeWarning, stacklevel=3)
            entries = {}
        self._entries = entries

    def __len__(self):
        return len(self._entries)

    def entries(self) -> list[tuple[str, int, str]]:
        with self._lock:
            return sorted((name, bits, text) for (name, bits), text in self._entries.items())

    def get(self, name: str, ctx: PrecisionContext) -> mpf | None:
        if not _valid_name(name):
            raise ValueError(f"bad constant name {name!r}")
        with self._lock:
            candidates = [bits for (n, bits) in self._entries if n == name and bits >= ctx.bits]
            if not candidates:
                return None
            text = self._entries[(name, min(candidates))]
        with ctx.workprec():
            return mpf(text)

    def put(self, name: str, ctx: PrecisionContext, value) -> None:
        if not _valid_name(name):
            raise ValueError(f"bad constant name {name!r}")
        with ctx.workprec():
            text = to_str(mpf(value)._mpf_, math.ceil(ctx.bits / LOG2_10) + 2)
        key = (name, ctx.bits)
        with self._lock:
            if self._entries.get(key) == text:
                return
            self._entries[key] = text
            if self.path is None:
                return
            fresh = not self.path.exists() or self.path.stat().st_size == 0
            with open(self.path, "a", encoding="utf-8") as fh:
                if fresh:
                    fh.write(CACHE_HEADER + "\n")
                fh.write(f"{name}\t{ctx.bits}\t{text}\n")
