"""Rational functions over Q and rational root extraction."""

from fractions import Fraction as F

import pytest

from ratfam import RatFunc
from ratfam.errors import DivisionByZero, ZeroDenominator
from ratfam.ratfunc import pgcd, pmul, rational_roots

t = RatFunc.variable()
one = RatFunc.constant(1)


def test_canonical_form_cancels_gcd():
    f = RatFunc((0, 1, 1), (0, 0, 1, 1))  # (t + t^2) / (t^2 + t^3) = 1/t
    assert f == one / t


def test_monic_denominator():
    f = one / (2 * t)
    assert f.den == (F(0), F(1))
    assert f.num == (F(1, 2),)


def test_field_axioms_spot():
    f = (one + t) / (one - t)
    g = (one - t) / (one + t)
    assert f * g == one
    assert f + (-f) == RatFunc.constant(0)
    assert (f / g) * g == f


def test_zero_division():
    with pytest.raises(DivisionByZero):
        one / RatFunc.constant(0)
    with pytest.raises(ZeroDenominator):
        RatFunc((1,), (0,))


def test_evaluate():
    f = (one + t) / (one - t)
    assert f.evaluate(F(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        f.evaluate(1)


def test_expand_matches_series_division():
    f = one / (one - t)
    x = f.expand(tau=5)
    assert [x.coefficient(k) for k in range(5)] == [1, 1, 1, 1, 1]


def test_rescale_variable():
    f = (one + t) / t
    g = f.rescale_variable(2)
    assert g.evaluate(3) == f.evaluate(9)


def test_rational_roots_from_construction():
    # (t - 1/2)(t + 3)(2t - 5) expanded, plus a root at 0
    poly = pmul(pmul((F(-1, 2), F(1)), (F(3), F(1))), (F(-5), F(2)))
    poly = pmul(poly, (F(0), F(1)))
    assert rational_roots(poly) == [F(-3), F(0), F(1, 2), F(5, 2)]


def test_rational_roots_irreducible():
    assert rational_roots((F(1), F(0), F(1))) == []  # z^2 + 1 has no roots in Q


def test_pgcd_monic():
    a = pmul((F(-1), F(1)), (F(2), F(1)))
    b = pmul((F(-1), F(1)), (F(5), F(3)))
    assert pgcd(a, b) == (F(-1), F(1))
