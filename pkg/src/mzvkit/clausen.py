"""Clausen functions and the x^p cot x moment integrals built on them.

Cl_m(theta) is the sine series sum sin(k theta)/k^m for even m and the cosine
series sum cos(k theta)/k^m for odd m.  Evaluation starts from

    Cl_1(theta) = -log(theta) + sum_{n>=1} q_n theta^(2n),
    q_n = zeta(2n) / (n (2 pi)^(2n))   (an exact rational),

and integrates term by term:  Cl_{2m} = int_0 Cl_{2m-1},
Cl_{2m+1} = zeta(2m+1) - int_0 Cl_{2m}.  Every order is then a
polynomial-times-log part plus a power series converging like (theta/2pi)^2n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .numerics import PrecisionContext, beta_dirichlet, bernoulli, to_mpf, zeta_int
from .quadrature import gauss_legendre_quad


@dataclass(frozen=True)
class ClausenOrder:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("Clausen order must be >= 2")

    @property
    def kind(self) -> str:
        return "sine" if self.m % 2 == 0 else "cosine"


@lru_cache(maxsize=None)
def _q(n: int) -> Fraction:
    # zeta(2n)/(2pi)^(2n) = (-1)^(n+1) B_2n / (2 (2n)!)
    return (-1) ** (n + 1) * bernoulli(2 * n) / (2 * math.factorial(2 * n)) / n


@dataclass
class _ClausenForm:
    """poly[j] * theta^j + logpoly[j] * theta^j log(theta) + sign * sum_n q_n theta^(2n+m-1)/rising_n."""

    m: int
    poly: dict
    logpoly: dict
    sign: int


def _integrate(form: _ClausenForm) -> tuple[dict, dict]:
    poly, logpoly = {}, {}
    for j, c in form.poly.items():
        poly[j + 1] = poly.get(j + 1, 0) + c / (j + 1)
    for j, c in form.logpoly.items():
        logpoly[j + 1] = logpoly.get(j + 1, 0) + c / (j + 1)
        poly[j + 1] = poly.get(j + 1, 0) - c / mpf(j + 1) ** 2
    return poly, logpoly


def _forms(m: int, ctx: PrecisionContext) -> _ClausenForm:
    form = _ClausenForm(1, {}, {0: mpf(-1)}, 1)
    for order in range(2, m + 1):
        poly, logpoly = _integrate(form)
        if order % 2 == 0:
            form = _ClausenForm(order, poly, logpoly, form.sign)
        else:
            poly = {j: -c for j, c in poly.items()}
            logpoly = {j: -c for j, c in logpoly.items()}
            poly[0] = poly.get(0, 0) + zeta_int(order, ctx)
            form = _ClausenForm(order, poly, logpoly, -form.sign)
    return form


def _evaluate_form(form: _ClausenForm, theta: mpf, ctx: PrecisionContext) -> mpf:
    lg = mp.log(theta)
    total = mpmath.fsum(c * theta ** j for j, c in form.poly.items())
    total += mpmath.fsum(c * theta ** j * lg for j, c in form.logpoly.items())
    # series: q_n theta^(2n+m-1) / ((2n+1)(2n+2)...(2n+m-1))
    x2 = theta * theta
    power = theta ** (form.m - 1)
    series = []
    tol = mpf(2) ** (-ctx.bits - 10)
    n = 1
    while True:
        power *= x2
        rising = 1
        for j in range(1, form.m):
            rising *= 2 * n + j
        term = to_mpf(_q(n) / rising) * power
        series.append(term)
        if abs(term) < tol and n > 2:
            break
        n += 1
    return total + form.sign * mpmath.fsum(series)


def clausen_eval(m: int, theta, ctx: PrecisionContext) -> mpf:
    """Cl_m(theta) for m >= 2 and 0 < theta < 2 pi."""
    ClausenOrder(m)
    with ctx.workprec(20):
        theta = mpf(theta)
        two_pi = 2 * mp.pi
        if not 0 < theta < two_pi:
            raise ValueError("theta must lie in (0, 2 pi)")
        sign = 1
        if theta > mp.pi:
            # sine-type orders are odd about pi, cosine-type even
            theta = two_pi - theta
            sign = -1 if m % 2 == 0 else 1
        value = sign * _evaluate_form(_forms(m, ctx.widen(20)), theta, ctx)
    with ctx.workprec():
        return +value


def clausen1(theta, ctx: PrecisionContext) -> mpf:
    """Cl_1(theta) = -log(2 sin(theta/2)); singular at 0."""
    with ctx.workprec(10):
        value = -mp.log(2 * mp.sin(mpf(theta) / 2))
    with ctx.workprec():
        return +value


def clausen_special(m: int, point: str, ctx: PrecisionContext) -> mpf:
    """Closed forms at theta = pi ('pi') and theta = pi/2 ('pi/2')."""
    ClausenOrder(m)
    with ctx.workprec(10):
        if point == "pi":
            if m % 2 == 0:
                value = mpf(0)
            else:
                h = (m - 1) // 2
                value = -mpf(4 ** h - 1) * zeta_int(m, ctx) / 4 ** h
        elif point == "pi/2":
            if m % 2 == 0:
                value = beta_dirichlet(m, ctx)
            else:
                h = (m - 1) // 2
                value = -mpf(4 ** h - 1) * zeta_int(m, ctx) / mpf(2) ** (4 * h + 1)
        else:
            raise ValueError("point must be 'pi' or 'pi/2'")
    with ctx.workprec():
        return +value


def _check_z(p: int, z) -> Fraction:
    z = Fraction(z)
    if p < 1:
        raise ValueError("p must be >= 1")
    if not 0 < z < 1:
        raise ValueError("z must lie in (0, 1)")
    return z


def orr_rhs(p: int, z, ctx: PrecisionContext) -> mpf:
    """Clausen closed form of int_0^{pi z} x^p cot x dx:

        (pi z)^p sum_{k=0}^p p! (-1)^floor((k+3)/2) / ((p-k)! (2 pi z)^k) Cl_{k+1}(2 pi z)
            + [p even] p! (-1)^(p/2) zeta(p+1) / 2^p
    """
    z = _check_z(p, z)
    with ctx.workprec(20):
        theta = 2 * mp.pi * to_mpf(z)
        terms = []
        for k in range(p + 1):
            cl = clausen1(theta, ctx) if k == 0 else clausen_eval(k + 1, theta, ctx)
            coeff = math.factorial(p) // math.factorial(p - k) * (-1) ** ((k + 3) // 2)
            terms.append(coeff * cl / theta ** k)
        total = (mp.pi * to_mpf(z)) ** p * mpmath.fsum(terms)
        if p % 2 == 0:
            total += math.factorial(p) * (-1) ** (p // 2) * zeta_int(p + 1, ctx) / mpf(2) ** p
    with ctx.workprec():
        return +total


def cot_moment_via_series(p: int, z, ctx: PrecisionContext) -> mpf:
    """-2 sum_n zeta(2n) (pi z)^(2n+p) / (pi^(2n) (2n+p)), from integrating the cot expansion."""
    z = _check_z(p, z)
    with ctx.workprec(10):
        zf = to_mpf(z)
        tol = mpf(2) ** (-ctx.bits - 10)
        z2 = zf * zf
        acc = []
        zpow = mpf(1)
        n = 0
        while True:
            term = zeta_int(2 * n, ctx) * zpow / (2 * n + p)
            acc.append(term)
            if n > 0 and abs(term) < tol:
                break
            zpow *= z2
            n += 1
        total = -2 * (mp.pi * zf) ** p * mpmath.fsum(acc)
    with ctx.workprec():
        return +total


def cot_moment_via_quadrature(p: int, z, ctx: PrecisionContext, tol=None) -> mpf:
    """int_0^{pi z} x^p cot x dx by adaptive Gauss-Legendre."""
    z = _check_z(p, z)

    def integrand(x):
        return x ** p * mp.cot(x)

    with ctx.workprec():
        upper = mp.pi * to_mpf(z)
    return gauss_legendre_quad(integrand, 0, upper, ctx, tol=tol)
