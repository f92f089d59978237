"""Tests for extended nonnegative rationals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerdomains.core.exceptions import InfinityIndeterminate, PreconditionFailed
from powerdomains.models.extended import (
    INFINITY,
    ONE,
    ZERO,
    ExtNonneg,
    ext_sum,
    is_rational_string,
    signed_combination,
)

values = st.one_of(
    st.fractions(min_value=0, max_value=50, max_denominator=20).map(ExtNonneg),
    st.just(INFINITY),
)


def test_parse_and_print():
    """Test the rational string grammar."""
    assert str(ExtNonneg.parse("3/2")) == "3/2"
    assert str(ExtNonneg.parse("4/2")) == "2"
    assert str(ExtNonneg.parse("inf")) == "inf"
    assert ExtNonneg.parse("0").is_zero
    for bad in ("-1", "1.5", "abc", "1/", "/2"):
        with pytest.raises(ValueError):
            ExtNonneg.parse(bad)
    assert is_rational_string("7/3")
    assert not is_rational_string("7/-3")


def test_negative_rejected():
    """Test that negative values are outside [0, ∞]."""
    with pytest.raises(ValueError):
        ExtNonneg(-1)
    with pytest.raises(ValueError):
        ExtNonneg(1) - ExtNonneg(2)


def test_infinity_conventions():
    """Test ∞ + x = ∞, ∞ · 0 = 0 and ∞ · x = ∞."""
    assert (INFINITY + ONE).is_infinite
    assert INFINITY * ZERO == ZERO
    assert ZERO * INFINITY == ZERO
    assert (INFINITY * ExtNonneg(Fraction(1, 3))).is_infinite
    assert (INFINITY - ExtNonneg(3)).is_infinite
    with pytest.raises(ValueError):
        ExtNonneg(3) - INFINITY
    with pytest.raises(ValueError):
        ONE / ZERO
    with pytest.raises(ValueError):
        ONE / INFINITY


def test_order_and_equality():
    """Test the total order with ∞ on top."""
    assert ExtNonneg(10**9) < INFINITY
    assert not INFINITY < INFINITY
    assert INFINITY == INFINITY
    assert ExtNonneg(Fraction(1, 2)) == Fraction(1, 2)
    assert ExtNonneg(2) == 2
    assert INFINITY != 2
    assert max(ZERO, INFINITY, ONE) == INFINITY


def test_immutable():
    """Test that values cannot be reassigned."""
    x = ExtNonneg(1)
    with pytest.raises(AttributeError):
        x._value = Fraction(2)


def test_ext_sum():
    assert ext_sum([]) == ZERO
    assert ext_sum([ONE, ExtNonneg(Fraction(1, 2))]) == Fraction(3, 2)
    assert ext_sum([ONE, INFINITY]).is_infinite


def test_signed_combination():
    """Test inclusion-exclusion in the signed scratch domain."""
    assert signed_combination([(1, ExtNonneg(3)), (-1, ONE)]) == 2
    assert signed_combination([(1, INFINITY), (-1, ONE)]).is_infinite
    with pytest.raises(InfinityIndeterminate):
        signed_combination([(1, INFINITY), (-1, INFINITY)])
    with pytest.raises(PreconditionFailed):
        signed_combination([(1, ONE), (-1, ExtNonneg(2))])


@given(values, values, values)
def test_semiring_laws(a, b, c):
    """Test commutativity, associativity and distributivity on [0, ∞]."""
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(values)
def test_round_trip_through_text(a):
    assert ExtNonneg.parse(str(a)) == a
