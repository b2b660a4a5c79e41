import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picode.errors import NegativeRadicand, RadicandTooLarge
from picode.exactnum import (
    RadicalSum,
    format_rational,
    is_squarefree,
    parse_rational,
    radical_add,
    radical_eq,
    radical_is_zero,
    radical_mul,
    radical_neg,
    radical_to_float,
    sqrt_of_rational,
    squarefree_decompose,
)

rationals = st.fractions(min_value=0, max_value=1000, max_denominator=1000)
small_radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 30])
radical_sums = st.lists(
    st.tuples(small_radicands, st.fractions(min_value=-50, max_value=50, max_denominator=30)), max_size=4
).map(RadicalSum)


def test_rational_roundtrip():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(3) == "3/1"
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational("0/5") == 0
    assert Fraction(0).denominator == 1


def test_sqrt_zero():
    assert sqrt_of_rational(0).is_zero()
    assert sqrt_of_rational(0).terms == ()


def test_sqrt_four_tenths():
    r = sqrt_of_rational(Fraction(4, 10))
    assert r.terms == ((10, Fraction(1, 5)),)
    # oracle: squaring with exact arithmetic gives back 4/10
    assert r * r == Fraction(2, 5)


def test_sqrt_perfect_square():
    assert sqrt_of_rational(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_of_rational(Fraction(9, 4)).terms == ((1, Fraction(3, 2)),)


def test_negative_radicand():
    with pytest.raises(NegativeRadicand):
        sqrt_of_rational(Fraction(-1, 3))


def test_ceiling():
    with pytest.raises(RadicandTooLarge):
        squarefree_decompose(2**65)
    assert squarefree_decompose(2**65, ceiling=2**70) == (2**32, 2)


def test_products():
    r2 = RadicalSum({2: 1})
    assert r2 * r2 == 2
    prod = RadicalSum({6: 1}) * RadicalSum({10: 1})
    assert prod.terms == ((15, Fraction(2)),)
    assert prod * prod == 60  # (sqrt6 sqrt10)^2 = 60 = (2 sqrt15)^2


def test_cancellation():
    a = RadicalSum({2: 1, 3: 1})
    assert radical_add(a, RadicalSum({3: -1})) == RadicalSum({2: 1})
    assert radical_is_zero(radical_add(a, radical_neg(a)))
    assert radical_eq(radical_mul(a, RadicalSum.from_rational(1)), a)


def test_to_float():
    assert radical_to_float(RadicalSum()) == 0.0
    assert radical_to_float(RadicalSum({10: Fraction(1, 5)})) == pytest.approx(math.sqrt(0.4), rel=1e-15)
    assert radical_to_float(RadicalSum.from_rational(Fraction(3, 2))) == 1.5


def test_json_roundtrip():
    a = RadicalSum({10: Fraction(-1, 5), 1: 3})
    assert a.to_json() == [{"coeff": "3/1", "radicand": 1}, {"coeff": "-1/5", "radicand": 10}]
    assert RadicalSum.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        RadicalSum.from_json([{"coeff": "1/1", "radicand": 4}])


def test_sign_and_order():
    # sqrt2 + sqrt3 vs sqrt10: 3.146... < 3.162...
    assert (RadicalSum({2: 1, 3: 1}) - RadicalSum({10: 1})).sign() == -1
    assert RadicalSum({2: 1}) > Fraction(141421, 100000)
    assert RadicalSum({2: 1}) < Fraction(141422, 100000)
    assert RadicalSum().sign() == 0


@settings(max_examples=200)
@given(rationals)
def test_sqrt_squares_back(x):
    r = sqrt_of_rational(x)
    assert r * r == x
    assert all(is_squarefree(k) for k, _ in r.terms)
    assert radical_to_float(r) == pytest.approx(math.sqrt(x), rel=1e-14, abs=1e-300)


@settings(max_examples=150)
@given(radical_sums, radical_sums, radical_sums)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    for r, _ in (a * b).terms:
        assert is_squarefree(r)


@settings(max_examples=150)
@given(radical_sums, radical_sums)
def test_equality_agrees_with_float(a, b):
    if a == b:
        assert float(a) == pytest.approx(float(b))
    else:
        # distinct canonical forms are distinct numbers
        assert (a - b).sign() != 0
        assert (float(a) > float(b)) == ((a - b).sign() > 0) or abs(float(a) - float(b)) < 1e-9
