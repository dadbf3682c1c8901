"""Exact linear forms, dense polynomials, reduced rational functions."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwloc.exact import (DivisionByZero, LinForm, NotPolynomial, Poly,
                         RatFunc, constant_coefficient, frac_str,
                         ratfunc_arith, specialize_linform)

rats = st.fractions(min_value=-40, max_value=40, max_denominator=8)
small_polys = st.lists(rats, max_size=5).map(Poly.make)


def test_linform_basics():
    f = LinForm.unit(1) - LinForm.unit(2).scale(3)
    assert f.coeff(1) == 1 and f.coeff(2) == -3 and f.coeff(7) == 0
    assert (f - f).is_zero()
    assert str(f) == "t1-3*t2"


def test_specialize_linform():
    f = LinForm.make({1: 2, 3: Fraction(1, 2)})
    assert specialize_linform(f, (5, 100, 4)) == 12
    with pytest.raises(IndexError):
        specialize_linform(f, (1,))


@given(rats, rats, st.integers(1, 6), st.integers(1, 6))
def test_linform_linearity(a, b, i, j):
    f = LinForm.unit(i, a) + LinForm.unit(j, b)
    p = list(range(1, 8))
    assert specialize_linform(f, p) == a * p[i - 1] + b * p[j - 1]


def test_poly_divmod_exact():
    a = Poly.make([Fraction(-1), 0, 1])          # t^2 - 1
    b = Poly.make([1, 1])                        # t + 1
    q, r = a.divmod(b)
    assert r.is_zero() and q == Poly.make([-1, 1])


@given(small_polys, small_polys)
def test_poly_ring_commutes(a, b):
    assert a * b == b * a
    assert a + b == b + a


def test_ratfunc_reduces():
    num = Poly.make([0, 0, 1])       # t^2
    den = Poly.make([0, 1])          # t
    r = RatFunc.make(num, den)
    assert r == RatFunc.monomial(1, 1)
    with pytest.raises(DivisionByZero):
        RatFunc.make(num, Poly.const(0))


@given(small_polys, small_polys.filter(lambda p: not p.is_zero()),
       small_polys, small_polys.filter(lambda p: not p.is_zero()))
def test_ratfunc_field_ops(n1, d1, n2, d2):
    a, b = RatFunc.make(n1, d1), RatFunc.make(n2, d2)
    s = ratfunc_arith(a, b, "+")
    assert ratfunc_arith(s, b, "-") == a
    if not b.is_zero():
        p = ratfunc_arith(a, b, "*")
        assert ratfunc_arith(p, b, "/") == a


def test_constant_coefficient_demands_polynomial():
    r = RatFunc.make(Poly.make([3, 7]), Poly.const(1))
    assert constant_coefficient(r) == 3
    bad = RatFunc.make(Poly.const(1), Poly.make([0, 1]))      # 1/t
    with pytest.raises(NotPolynomial):
        constant_coefficient(bad)


def test_frac_str():
    assert frac_str(Fraction(7)) == "7"
    assert frac_str(Fraction(-4876875, 8)) == "-4876875/8"
    assert frac_str(5) == "5"
