"""Exact quadratic arithmetic: canonical form, order, floor."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prym4.exact import (Surd, discriminants, exact_sqrt, is_discriminant,
                         lam, sqrt_sign)


def test_exact_sqrt():
    assert exact_sqrt(0) == 0
    assert exact_sqrt(49) == 7
    assert exact_sqrt(48) is None
    assert exact_sqrt(-4) is None


def test_is_discriminant():
    assert [D for D in range(1, 22) if is_discriminant(D)] == \
        [1, 4, 5, 8, 9, 12, 13, 16, 17, 20, 21]
    assert list(discriminants(4, 13)) == [4, 5, 8, 9, 12, 13]


def test_sqrt_sign_cases():
    assert sqrt_sign(3, 1, 5) == 1
    assert sqrt_sign(-3, 1, 5) == -1      # sqrt(5) < 3
    assert sqrt_sign(-2, 1, 5) == 1       # sqrt(5) > 2
    assert sqrt_sign(2, -1, 5) == -1
    assert sqrt_sign(-3, 1, 9) == 0       # 3 = sqrt(9)
    assert sqrt_sign(0, 0, 5) == 0


def test_canonical_form():
    x = Surd(2, 4, -6, 5)
    assert (x.a, x.b, x.den) == (-1, -2, 3)
    assert Surd(1, 1, 1, 4).a == 3 and Surd(1, 1, 1, 4).b == 0
    with pytest.raises(ZeroDivisionError):
        Surd(1, 1, 0, 5)


def test_arithmetic_and_order():
    r = Surd.sqrt(5)
    assert r * r == 5
    assert (1 + r) * (1 - r) == -4
    assert r.inverse() * r == 1
    assert Surd.rational(Fraction(3, 2), 5) < r < 3
    assert (r - r).sign() == 0
    assert lam(-1, 17) == Surd(-1, 1, 2, 17)


def test_floor():
    assert Surd.sqrt(5).floor() == 2
    assert (-Surd.sqrt(5)).floor() == -3
    assert Surd.rational(Fraction(-7, 2), 5).floor() == -4
    assert lam(3, 17).floor() == 3        # (3+sqrt(17))/2 = 3.56


surd_values = st.builds(
    Surd,
    st.integers(-50, 50), st.integers(-50, 50),
    st.integers(1, 20),
    st.sampled_from([2, 3, 5, 7, 13, 17, 60, 101]))


@given(surd_values, surd_values.map(lambda s: Surd(s.a, s.b, s.den, 0)))
def test_add_sub_roundtrip(x, y):
    assert (x + y) - y == x


@given(surd_values)
def test_floor_brackets(x):
    n = x.floor()
    assert n <= x < n + 1


@given(surd_values)
def test_conj_norm_rational(x):
    assert (x * x.conj()).is_rational
    if x:
        assert x * x.inverse() == 1


@given(surd_values, surd_values.map(lambda s: Surd(s.a, s.b, s.den, 0)),
       st.integers(-30, 30))
def test_distributive(x, y, k):
    assert x * (y + k) == x * y + x * k
