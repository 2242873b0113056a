import logging
from fractions import Fraction

import pytest
from utils import around

from freeness_bounds.bounds import (
    LEMMA_THRESHOLD,
    PROOF_THRESHOLD,
    bound_report,
    bound_sweep,
    large_r_threshold,
    lower_construction,
    lower_easy,
    lower_target,
    omega_offset,
    term_domination,
    term_upper_bounds,
    upper_enlogn,
    upper_loglog,
    upper_simple,
    w_bracketing,
    w_form_gap,
)
from freeness_bounds.certified_reals import RadicalSum
from freeness_bounds.errors import DomainError, SizeGuardError
from freeness_bounds.evaluator import identity_sum

SQRT2 = RadicalSum.radical(1, 2, 2)


def test_term_upper_bounds():
    assert term_upper_bounds(1, 2, 3, 1).young.exact == 3
    assert around(term_upper_bounds(2, 2, 3, 1).refined.interval, "2.3591", "2.3592")
    assert around(term_upper_bounds(1, 3, 3, 1).wbased.interval, "2.857", "2.858")
    # refined collapses to r^(1/n) at b = n
    assert term_upper_bounds(3, 3, 3, 8).refined.exact == 2
    with pytest.raises(DomainError):
        term_upper_bounds(2, 1, 3, 1)


@pytest.mark.parametrize("b, d, n, r", ((1, 2, 3, 1), (2, 5, 9, 2), (4, 4, 4, 5), (1, 7, 12, 1)))
def test_term_domination(b, d, n, r):
    assert term_domination(b, d, n, r) == {"young": True, "refined": True, "wbased": True}


def test_w_form_gap_straddles_zero():
    for b in (1, 2, 5):
        gap = w_form_gap(b, 10, 2)
        assert max(abs(gap.lo), abs(gap.hi)) <= Fraction(1, 10**9)


def test_upper_simple():
    assert upper_simple(3, 1).exact == 6
    assert upper_simple(2, 2).exact == 3 + SQRT2
    assert upper_simple(1, 1).exact == 1


def test_upper_enlogn():
    assert upper_enlogn(1, 1).exact == 1
    assert around(upper_enlogn(3, 1).interval, "11.958", "11.960")
    assert around(upper_enlogn(3, 4).interval, "16.54", "16.55")


def test_upper_loglog():
    assert around(upper_loglog(3, 1).interval, "7.302", "7.303")
    assert around(upper_loglog(2, 1).interval, "3.946", "3.948")
    assert around(upper_loglog(2, 2).interval, "8.581", "8.583")
    with pytest.raises(DomainError):
        upper_loglog(1, 1)


def test_lower_easy():
    assert lower_easy(3, 2).bound.exact == identity_sum(3, 2)
    assert around(lower_easy(3, 2).bound.interval, "4.674", "4.675")
    assert lower_easy(2, 1).bound.exact == 2
    assert lower_easy(2, 1).first.hi < 0
    assert lower_easy(7, 1).second == 7


def test_lower_target():
    assert around(lower_target(110), "15.65", "15.67")
    assert around(lower_target(200), "30.6", "30.7")


@pytest.mark.parametrize("n", (110, 150))
def test_lower_construction(n):
    report = lower_construction(n)
    assert report.valid
    assert report.chain.bs[1] == n // 10
    assert report.chain.bs[-1] == 1
    assert report.gap_two
    assert all(report.lemma_conditions)
    assert report.b1_within_tenth
    assert report.in_proven_range
    assert report.holds is True


def test_lower_construction_outside_proven_range(caplog):
    with caplog.at_level(logging.WARNING):
        report = lower_construction(100)
    assert "outside the proven range" in caplog.text
    assert not report.in_proven_range
    assert (report.lemma_threshold, report.proof_threshold) == (LEMMA_THRESHOLD, PROOF_THRESHOLD)
    with pytest.raises(DomainError):
        lower_construction(1)


def test_large_r_threshold():
    two = large_r_threshold(2, 10)
    assert two.threshold == 1
    assert [r for r, _ in two.certificates] == list(range(10, 0, -1))
    three = large_r_threshold(3, 10)
    assert three.threshold == 2
    assert three.certificates[-1] == (1, False)


def test_large_r_threshold_above_one():
    four = large_r_threshold(4, 10)
    assert four.threshold is not None and four.threshold >= 2
    assert four.certificates[0] == (10, True)
    assert four.certificates[-1] == (four.threshold - 1, False)


def test_large_r_threshold_guards():
    with pytest.raises(DomainError):
        large_r_threshold(1, 10)
    with pytest.raises(SizeGuardError):
        large_r_threshold(7, 10)


def test_omega_offset():
    offset = omega_offset()
    assert Fraction(232, 100) < offset.lo and offset.hi < Fraction(234, 100)


@pytest.mark.parametrize("x", (3, 10, 110, 1000))
def test_w_bracketing(x):
    bracket = w_bracketing(x)
    assert bracket.above_half_log is True
    assert bracket.below_log is True


def test_w_bracketing_below_e():
    bracket = w_bracketing(2)
    assert bracket.above_half_log is True
    assert bracket.below_log is None


def test_bound_report():
    report = bound_report(6, 1)
    assert report.F.floor == 8
    assert [e.name for e in report.entries] == [
        "young_sum",
        "enlogn_sum",
        "loglog_thm",
        "easy_lower",
    ]
    assert all(e.dominates_F is True for e in report.entries)
    assert around(report.entry("loglog_thm").value.interval, "17.53", "17.55")
    with pytest.raises(KeyError):
        report.entry("nope")


def test_bound_report_beyond_guard():
    report = bound_report(6, 2, solve_guard=5)
    assert report.F is None
    assert all(e.dominates_F is None for e in report.entries)


def test_bound_report_with_construction():
    report = bound_report(110, 1, with_construction=True)
    assert report.F is None
    assert report.construction.holds is True
    assert report.entry("construction_lower").value.exact == report.construction.value


def test_bound_report_domain():
    with pytest.raises(DomainError):
        bound_report(1, 1)


def test_bound_sweep():
    rows = bound_sweep([2, 3], 1)
    assert [row.n for row in rows] == [2, 3]
    assert rows[1].young_sum == "6.000000000000"
    assert rows[0].F == "2.000000000000"
    assert bound_sweep([3], 1, solve_guard=2)[0].F == ""
    with pytest.raises(DomainError):
        bound_sweep([1], 1)
