from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from mpmath import mpf

from mzvkit import identities, oracle, zeta_series
from mzvkit.numerics import make_context


@pytest.mark.parametrize("r", range(7))
def test_coefficient_bridge(r):
    for k in range(1, r + 2):
        assert identities.coeff_c(r, 0, k) == identities.coeff_c_r0(r, k)
    ctx = make_context(25)
    assert identities.h_closed(r, 0, ctx) == identities.h_closed_r0(r, ctx)


@pytest.mark.parametrize("r", range(9))
def test_delta_binomial_identity(r):
    assert all(identities.delta_binomial_identity(r, k) for k in range(1, r + 2))


def test_coefficients_exact():
    assert identities.coeff_c(0, 0, 1) == 1 - Fraction(3, 4) * 2
    assert identities.coeff_d(0, 1) == 2 + Fraction(3, 4) * 2
    assert identities.coeff_c(1, 2, 3) == comb(6, 4) - (1 - Fraction(1, 64)) * comb(6, 5)
    with pytest.raises(ValueError):
        identities.coeff_c(-1, 0, 1)


def test_two_blocks():
    assert identities.zeta_two_block(0).coefficient == 1
    assert identities.t_two_block(0).coefficient == 1
    assert identities.zeta_two_block(3).coefficient == Fraction(1, factorial(7))
    assert identities.t_two_block(2).coefficient == Fraction(1, 16 * 24)


def test_r0_reduces_to_zeta3():
    ctx = make_context(30)
    with ctx.workprec():
        z3 = mpmath.zeta(3)
        assert abs(identities.h_closed_r0(0, ctx) - z3) < mpf(10) ** -35
        assert abs(identities.t_closed(0, ctx) - mpf(7) / 8 * z3) < mpf(10) ** -35


@pytest.mark.parametrize("r,s", [(r, s) for r in range(4) for s in range(4 - r)])
def test_h_closed_vs_oracle(r, s, ctx20):
    with ctx20.workprec():
        ref = oracle.mzv_direct([2] * r + [3] + [2] * s, ctx20)
        assert abs(identities.h_closed(r, s, ctx20) - ref) < mpf(10) ** -20


@pytest.mark.parametrize("r", range(4))
def test_t_closed_vs_oracle(r, ctx20):
    with ctx20.workprec():
        assert abs(identities.t_closed(r, ctx20) - oracle.tvalue_direct([2] * r + [3], ctx20)) < mpf(10) ** -20


@pytest.mark.parametrize("r", range(5))
def test_series_forms_equal_closed_forms(r):
    ctx = make_context(25)
    with ctx.workprec():
        assert abs(zeta_series.h_series(r, ctx) - identities.h_closed_r0(r, ctx)) < mpf(10) ** -25
        assert abs(zeta_series.t_series(r, ctx) - identities.t_closed(r, ctx)) < mpf(10) ** -25


def test_stuffle_on_closed_forms(ctx20):
    """zeta(2,3) + zeta(3,2) = zeta(2) zeta(3) - zeta(5)."""
    with ctx20.workprec():
        total = identities.h_closed(1, 0, ctx20) + identities.h_closed(0, 1, ctx20)
        assert abs(total - (mpmath.zeta(2) * mpmath.zeta(3) - mpmath.zeta(5))) < mpf(10) ** -20


def test_dim_bound():
    assert [identities.dim_bound(k) for k in range(12)] == [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9]
    assert all(identities.dim_bound(k) == identities.dim_bound_from_series(k) for k in range(41))
    with pytest.raises(ValueError):
        identities.dim_bound(-1)
