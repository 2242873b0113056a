from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from utils import around

from freeness_bounds.errors import DomainError
from freeness_bounds.intervals import (
    DyadicInterval,
    e_interval,
    exp_interval,
    log_interval,
)

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
nonzero = st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=1000)


def test_exact_dyadic_is_degenerate():
    interval = DyadicInterval.exact(Fraction(3, 4))
    assert interval.is_exact
    assert interval.lo == interval.hi == Fraction(3, 4)


def test_non_dyadic_is_tight():
    interval = DyadicInterval.exact(Fraction(1, 3))
    assert interval.contains(Fraction(1, 3))
    assert not interval.is_exact
    assert interval.width <= Fraction(1, 2**60)


def test_improper_interval():
    with pytest.raises(ValueError):
        DyadicInterval(2, 1, 0)
    with pytest.raises(ValueError):
        DyadicInterval.from_fractions(1, 0)


@given(fractions, fractions)
def test_sum_and_product_enclose(a, b):
    x, y = DyadicInterval.exact(a), DyadicInterval.exact(b)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)


@given(fractions, nonzero)
def test_quotient_encloses(a, b):
    assert (DyadicInterval.exact(a) / DyadicInterval.exact(b)).contains(a / b)
    assert (DyadicInterval.exact(a) / DyadicInterval.exact(-b)).contains(-a / b)


def test_division_by_zero_interval():
    with pytest.raises(DomainError):
        DyadicInterval.exact(1) / DyadicInterval.from_fractions(-1, 1)


def test_transcendentals():
    assert exp_interval(DyadicInterval.exact(0)).contains(1)
    assert log_interval(DyadicInterval.exact(1)).contains(0)
    assert around(e_interval(), "2.718281828", "2.718281829")
    assert around(log_interval(DyadicInterval.exact(2)), "0.693147180", "0.693147181")
    assert e_interval(128).width <= Fraction(1, 2**120)


def test_log_of_nonpositive():
    with pytest.raises(DomainError):
        log_interval(DyadicInterval.exact(0))


def test_ordering_predicates():
    one, two = DyadicInterval.exact(1), DyadicInterval.exact(2)
    wide = DyadicInterval.from_fractions(0, 3)
    assert one.is_below(two)
    assert two.is_above(one)
    assert wide.overlaps(one)
    assert one.intersect(two) is None
    assert wide.intersect(one).contains(1)
    assert one.maximum(two).lo == 2


def test_format_endpoints_round_outward():
    interval = DyadicInterval.exact(Fraction(1, 3))
    lo, hi = interval.format_endpoints()
    assert Fraction(lo) <= Fraction(1, 3) <= Fraction(hi)
    assert lo.startswith("0.3333333333333333333")
    assert str(DyadicInterval.exact(1)) == "[1.00000000000000000000, 1.00000000000000000000]"
    assert DyadicInterval.exact(Fraction(-5, 2)).format_midpoint(3) == "-2.500"
