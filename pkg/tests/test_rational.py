from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from confalg.rational import falling, format_scalar, gen_binomial, parse_scalar


def test_parse_plain_and_fraction():
    assert parse_scalar("3") == Fraction(3)
    assert parse_scalar("-7") == Fraction(-7)
    assert parse_scalar("1/2") == Fraction(1, 2)
    assert parse_scalar("-4/6") == Fraction(-2, 3)
    assert parse_scalar("  5/10 ") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["0.5", "1e3", "a", "1/-2", "--3", "1/0", "", "1.0/2"])
def test_parse_rejects_inexact_literals(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_format_round_trip():
    for text in ["0", "5", "-5", "1/2", "-3/7", "22/7"]:
        assert format_scalar(parse_scalar(text)) == text


def test_gen_binomial_examples():
    assert gen_binomial(3, 2) == 3
    assert gen_binomial(17, 0) == 1
    assert gen_binomial(-5, 0) == 1
    # (-1)(-2)/2! computed by direct falling-factorial evaluation
    assert Fraction(falling(-1, 2), 2) == 1
    assert gen_binomial(-1, 2) == 1
    assert gen_binomial(-2, 3) == -4
    assert gen_binomial(4, 6) == 0


def test_gen_binomial_rejects_negative_k():
    with pytest.raises(ValueError):
        gen_binomial(3, -1)
    with pytest.raises(ValueError):
        falling(3, -2)


@given(st.integers(-40, 40), st.integers(1, 12))
def test_gen_binomial_pascal_recurrence(m, k):
    assert gen_binomial(m, k) == gen_binomial(m - 1, k) + gen_binomial(m - 1, k - 1)


@given(st.integers(-30, 30), st.integers(0, 10))
def test_gen_binomial_is_integral(m, k):
    assert gen_binomial(m, k).denominator == 1
