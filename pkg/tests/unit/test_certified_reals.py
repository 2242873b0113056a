import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeness_bounds.certified_reals import (
    ZERO,
    Ordering,
    RadicalSum,
    RadicalTerm,
    canonicalize_term,
    compare,
    enclose,
    floor_certified,
    floor_with_enclosure,
    parse_radsum,
    radsum_add,
    radsum_scale,
)
from freeness_bounds.errors import DomainError

SQRT2 = RadicalSum.radical(1, 2, 2)

terms = st.tuples(
    st.fractions(min_value=-5, max_value=5, max_denominator=10),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=8),
)
radsums = st.lists(terms, max_size=4).map(
    lambda ts: RadicalSum(RadicalTerm(Fraction(c), k, d) for c, k, d in ts)
)


@pytest.mark.parametrize(
    "coeff, k, d, expected",
    (
        (1, 8, 6, (1, 2, 2)),
        (3, 4, 2, (6, 1, 1)),
        (1, 12, 2, (2, 3, 2)),
        (1, 16, 6, (1, 4, 3)),
        (1, 72, 2, (6, 2, 2)),
        (Fraction(1, 2), 32, 4, (1, 2, 4)),
        (0, 7, 3, (0, 1, 1)),
    ),
)
def test_canonicalize_term(coeff, k, d, expected):
    assert tuple(canonicalize_term(coeff, k, d)) == expected


def test_canonicalize_rejects_bad_radicals():
    with pytest.raises(DomainError):
        canonicalize_term(1, 0, 2)
    with pytest.raises(DomainError):
        canonicalize_term(1, 2, 0)


def test_add_and_scale():
    assert radsum_add(SQRT2, SQRT2) == RadicalSum.radical(2, 2, 2)
    assert radsum_add(RadicalSum.radical(2, 2, 2), RadicalSum.radical(-2, 2, 2)) == ZERO
    assert not (SQRT2 - SQRT2)
    a = RadicalSum.rational(2) + RadicalSum.radical(4, 3, 2)
    assert radsum_scale(Fraction(1, 2), a) == 1 + RadicalSum.radical(2, 3, 2)
    assert radsum_scale(0, a) is ZERO


def test_serialization():
    value = RadicalSum.rational(2) + SQRT2
    assert str(value) == "2 + 1 * 2^(1/2)"
    assert str(ZERO) == "0"
    assert str(RadicalSum.radical(Fraction(-2, 3), 5, 3)) == "-2/3 * 5^(1/3)"
    assert parse_radsum("2 + 1 * 2^(1/2)") == value
    assert parse_radsum("1 * 8^(1/6)") == SQRT2
    with pytest.raises(ValueError):
        parse_radsum("2 + sqrt(2)")


def test_terms_put_rational_part_first():
    value = RadicalSum.radical(1, 2, 3) + RadicalSum.radical(1, 3, 2) + 2
    assert [t.index for t in value.terms] == [1, 2, 3]
    assert value.rational_part == 2
    assert not value.is_rational
    assert RadicalSum.radical(1, 9, 2).is_rational


@pytest.mark.parametrize(
    "a, b, expected",
    (
        (RadicalSum.rational(2) + SQRT2, RadicalSum.radical(2, 2, 2), Ordering.greater),
        (RadicalSum.radical(1, 8, 6), SQRT2, Ordering.equal),
        (SQRT2, RadicalSum.rational(Fraction(3, 2)), Ordering.less),
        (RadicalSum.rational(2) + SQRT2, RadicalSum.rational(4), Ordering.less),
        # separated by about 2^-101
        (RadicalSum.radical(1, 2**200 + 1, 2), RadicalSum.rational(2**100), Ordering.greater),
    ),
)
def test_compare(a, b, expected):
    assert compare(a, b) is expected


def test_compare_refinement_logs_arguments(caplog):
    caplog.set_level(logging.DEBUG, logger="freeness_bounds.certified_reals")
    nudged = SQRT2 + RadicalSum.rational(Fraction(1, 2**80))
    assert compare(nudged, SQRT2) is Ordering.greater
    (record,) = [r for r in caplog.records if r.msg.startswith("refining")]
    assert record.args == (nudged, SQRT2, 128)


def test_rich_comparisons():
    assert SQRT2 < 2
    assert SQRT2 >= 1
    assert RadicalSum.radical(1, 8, 6) <= SQRT2
    assert SQRT2 == RadicalSum.radical(1, 8, 6)
    assert 3 - SQRT2 > 1


@pytest.mark.parametrize(
    "value, expected",
    (
        (RadicalSum.rational(2) + SQRT2, 3),
        (RadicalSum.rational(5), 5),
        (RadicalSum.radical(2, 2, 2), 2),
        (RadicalSum.rational(Fraction(-1, 2)), -1),
        (RadicalSum.radical(1, 2**200 + 1, 2), 2**100),
    ),
)
def test_floor(value, expected):
    n, interval = floor_with_enclosure(value)
    assert n == floor_certified(value) == expected
    assert n <= interval.lo and interval.hi < n + 1


def test_floor_starting_precision():
    value = RadicalSum.rational(2) + SQRT2
    n_coarse, coarse = floor_with_enclosure(value, precision=16)
    n_fine, fine = floor_with_enclosure(value, max_precision=64, precision=256)
    assert n_coarse == n_fine == 3
    assert fine.hi - fine.lo < coarse.hi - coarse.lo


def test_enclose_examples():
    assert enclose(ZERO).is_exact and enclose(ZERO).lo == 0
    assert enclose(SQRT2, 20).contains(Fraction("1.41421356"))
    interval = enclose(RadicalSum.rational(2) + SQRT2, 30)
    assert Fraction("3.41421") < interval.lo and interval.hi < Fraction("3.41422")
    with pytest.raises(DomainError):
        enclose(SQRT2, 0)


@given(radsums, st.sampled_from((16, 64, 200)))
def test_enclosure_width(a, precision):
    interval = enclose(a, precision)
    assert interval.width <= Fraction(2, 2**precision)
    if a.is_rational:
        assert interval.contains(a.rational_part)


@settings(max_examples=50, deadline=None)
@given(radsums, radsums)
def test_compare_is_antisymmetric(a, b):
    forward, backward = compare(a, b), compare(b, a)
    flip = {Ordering.less: Ordering.greater, Ordering.greater: Ordering.less}
    assert backward is flip.get(forward, Ordering.equal)
    assert (forward is Ordering.equal) == (a == b)
    if enclose(a).is_below(enclose(b)):
        assert forward is Ordering.less


@settings(max_examples=50, deadline=None)
@given(radsums, st.fractions(min_value=Fraction(1, 10**6), max_value=10, max_denominator=10**6))
def test_adding_a_positive_rational_increases(a, q):
    assert compare(a, a + q) is Ordering.less


@given(radsums, radsums)
def test_sum_enclosure_overlaps_interval_sum(a, b):
    assert enclose(a + b).overlaps(enclose(a) + enclose(b))
