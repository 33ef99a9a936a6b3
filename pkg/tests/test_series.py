import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lerchmock import series as S
from lerchmock.errors import (ConstraintViolation, DivergentProduct, IncompatibleOffsets,
                              NonzeroConstantTerm, ZeroConstantTerm)
from lerchmock.series import FormalSeries

from conftest import series_st


def coeffs(s):
    return [int(c) if c.denominator == 1 else c for c in s.coeffs]


def geometric(order, ratio=1):
    return FormalSeries.from_coeffs([ratio ** k for k in range(order + 1)])


# --- arithmetic examples -----------------------------------------------------

def test_telescoping_product():
    one_minus_q = FormalSeries.from_terms({0: 1, 1: -1}, 12)
    assert coeffs(one_minus_q * geometric(12)) == [1] + [0] * 12


def test_eta_phi_at_q2_low_order():
    prod = (S.eta_series(4).dilate(2) * S.phi_series(4).dilate(2)).truncate(8)
    assert prod.terms() == {0: 1, 4: -2, 6: -2, 8: 2}


def test_inverse_examples():
    assert coeffs(S.series_inv(FormalSeries.from_terms({0: 1, 1: -1}, 10))) == [1] * 11
    assert coeffs(S.series_inv(FormalSeries.from_terms({0: 1, 1: 1}, 10))) == [(-1) ** k for k in range(11)]


def test_inverse_against_long_division():
    A = S.pochhammer_series(1, 1, 2, -1, 20) ** 2  # (-q;q)_2^2
    inv = S.series_inv(A)
    # synthetic long division of 1 by A
    a = A.coeffs
    rem = [Fraction(1)] + [Fraction(0)] * 20
    quo = []
    for k in range(21):
        c = rem[k] / a[0]
        quo.append(c)
        for j in range(k, 21):
            rem[j] -= c * a[j - k]
    assert list(inv.coeffs) == quo


def test_exp_examples():
    q = FormalSeries.from_terms({1: 1}, 10, offset=0)
    assert list(S.series_exp(q).coeffs) == [Fraction(1, math.factorial(n)) for n in range(11)]
    one_minus_q = FormalSeries.from_terms({0: 1, 1: -1}, 15)
    assert S.series_exp(S.series_log(one_minus_q)).terms() == {0: 1, 1: -1}


def test_exp_of_divisor_sum_matches_product():
    # exp(-2 sum_s q^s sum_{d|s, d<=s/(n+1)} (-1)^d/d) = (-q^(n+1);q)_inf^2
    for n in (0, 1, 3):
        div = S.divisor_exp_series(40, lower_bound=n + 1, weight="alternating", power=-2)
        prod = S.pochhammer_series(n + 1, 1, math.inf, -1, 40) ** 2
        assert div.agrees(prod)


def test_exp_needs_zero_constant_term():
    with pytest.raises(NonzeroConstantTerm):
        S.series_exp(FormalSeries.one(3))
    with pytest.raises(NonzeroConstantTerm):
        S.series_log(FormalSeries.from_coeffs([2, 1]))


def test_inverse_of_zero_leading_term():
    with pytest.raises(ZeroConstantTerm):
        S.series_inv(FormalSeries.from_coeffs([0, 1]))


# --- ring laws -----------------------------------------------------------------

@given(series_st(), series_st())
def test_mul_commutes(a, b):
    assert (a * b).agrees(b * a)


@given(series_st(), series_st(), series_st())
def test_mul_associates(a, b, c):
    assert ((a * b) * c).agrees(a * (b * c))


@given(series_st(offset=0), series_st(offset=0), series_st(offset=0))
def test_distributive(a, b, c):
    assert (a * (b + c)).agrees(a * b + a * c)


@given(series_st(unit=True))
def test_inverse_is_two_sided(a):
    one = a * S.series_inv(a)
    assert one.offset == 0
    assert one.coeffs[0] == 1 and not any(one.coeffs[1:])


@given(series_st(min_order=1, offset=0))
def test_exp_log_round_trip(a):
    a = FormalSeries(Fraction(0), (Fraction(0),) + a.coeffs[1:])
    assert S.series_log(S.series_exp(a)).agrees(a)


@given(series_st(offset=0), series_st(offset=0))
def test_exp_turns_sums_into_products(a, b):
    a = FormalSeries(Fraction(0), (Fraction(0),) + a.coeffs[1:])
    b = FormalSeries(Fraction(0), (Fraction(0),) + b.coeffs[1:])
    assert S.series_exp(a + b).agrees(S.series_exp(a) * S.series_exp(b))


@given(series_st(), series_st())
def test_order_is_min_of_operands(a, b):
    p = a * b
    assert p.order == min(a.order, b.order)
    s = a + b
    assert s.top == min(a.top, b.top)


@given(series_st(), st.integers(1, 4))
def test_dilate_is_a_ring_map(a, k):
    assert (a * a).dilate(k).agrees(a.dilate(k) * a.dilate(k))


@given(series_st())
def test_json_round_trip(a):
    b = FormalSeries.from_json(a.to_json())
    assert b == a
    assert json.loads(a.to_json())["order"] == a.order


@given(series_st())
def test_csv_round_trip(a):
    b = FormalSeries.from_csv(a.to_csv())
    assert b.agrees(a) and b.top == a.top


def test_offsets_with_24ths():
    x = FormalSeries.from_coeffs([1, 1], offset=Fraction(1, 24))
    y = FormalSeries.from_coeffs([1, -1], offset=Fraction(-1, 24))
    p = x * y
    assert p.offset == 0 and coeffs(p) == [1, 0]


def test_incompatible_offsets():
    x = FormalSeries.from_coeffs([1, 1], offset=Fraction(1, 2))
    with pytest.raises(IncompatibleOffsets):
        x + FormalSeries.one(3)


def test_coefficient_beyond_order():
    with pytest.raises(IndexError):
        S.eta_series(5).coeff(6)


# --- products and mock theta series ---------------------------------------------

def test_finite_and_infinite_pochhammer():
    assert S.pochhammer_series(1, 1, 3, 1, 6).terms() == {0: 1, 1: -1, 2: -1, 4: 1, 5: 1, 6: -1}
    assert S.eta_series(12).terms() == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}


def test_pochhammer_split():
    # (-q;q)_3 (-q^4;q)_inf = (-q;q)_inf
    lhs = S.pochhammer_series(1, 1, 3, -1, 30) * S.pochhammer_series(4, 1, math.inf, -1, 30)
    assert lhs.agrees(S.chi_series(30))


def test_pochhammer_errors():
    with pytest.raises(DivergentProduct):
        S.pochhammer_series(1, 0, math.inf, 1, 5)
    with pytest.raises(ConstraintViolation):
        S.pochhammer_series(0, 1, 2, 1, 5)


def test_mock_f_low_order():
    assert coeffs(S.mock_f_series(6)) == [1, 1, -2, 3, -3, 3, -5]


def test_f_recip_direct_expansion():
    # sum q^n / (-q;q)_n^2 expanded with independent series division
    acc = FormalSeries.from_coeffs([0] * 7)
    for n in range(7):
        den = S.pochhammer_series(1, 1, n, -1, 6) ** 2
        acc = acc + (FormalSeries.monomial(n, 6 + n) * S.series_inv(den)).truncate(6).with_offset(0)
    assert S.f_recip_series(6).agrees(acc)
    assert S.f_recip_product_series(6).agrees(acc)


def test_psi_starts_at_q():
    assert S.psi_series(10).coeff(0) == 0
    assert S.psi_series(10).coeff(1) == 1


def test_watson_numerator_and_constant():
    num = S.watson_numerator_series(50)
    assert num.is_integral()
    assert S.watson_rhs_series(50).coeff(0) == 1
    assert S.watson_rhs_series(50).agrees(S.mock_f_series(50))


def test_divisor_forms_of_f():
    f = S.mock_f_series(30)
    assert f.agrees(S.f_divisor_series(30, "small"))
    assert f.agrees(S.f_divisor_series(30, "large"))
    fr = S.f_recip_product_series(30)
    assert fr.agrees(S.f_recip_divisor_series(30, "small"))
    assert fr.agrees(S.f_recip_divisor_series(30, "large"))


def test_divisor_exp_empty_constraint():
    assert S.divisor_exp_series(0).terms() == {0: 1}
    assert S.divisor_exp_series(8, lower_bound=9).terms() == {0: 1}


def test_divisor_exp_residue_class_product():
    # prod over B = +-1 (mod 5) of (1 - q^B)
    want = FormalSeries.one(30)
    for B in range(1, 31):
        if B % 5 in (1, 4):
            want = want * S.pochhammer_series(B, 1, 1, 1, 30)
    assert S.divisor_exp_series(30, residue=1, modulus=5).agrees(want)


def test_theta_char_examples():
    sq = S.theta_char_coeffs(1, 0, lambda d: 1, 50)
    assert sq.terms() == {d * d: 1 for d in range(1, 8)}
    alt = S.theta_char_coeffs(3, 1, lambda d: (-1) ** d, 30)
    assert alt.coeff(4) == -1 and alt.coeff(2) == 0
    assert alt.agrees(S.theta_char_coeffs(3, 1, lambda d: (-1) ** d, 30, route="direct"))


def test_theta_char_needs_positive_exponents():
    with pytest.raises(ConstraintViolation):
        S.theta_char_coeffs(1, -3, lambda d: 1, 10)


def test_divisor_table_matches_brute_force():
    t = S.divisor_table(60)
    for n in range(1, 61):
        assert sorted(t.divisors(n)) == [d for d in range(1, n + 1) if n % d == 0]
