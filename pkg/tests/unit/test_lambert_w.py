from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from utils import around

from freeness_bounds.errors import DomainError
from freeness_bounds.intervals import GUARD_BITS, DyadicInterval, e_interval, exp_interval
from freeness_bounds.lambert_w import delta, lambert_w, root_interval

OMEGA_LO, OMEGA_HI = "0.56714329040978387299", "0.56714329040978387301"


def test_zero():
    w = lambert_w(0)
    assert w.is_exact and w.lo == 0


def test_e():
    w = lambert_w(e_interval(64 + GUARD_BITS))
    assert w.contains(1)
    assert w.width <= Fraction(1, 10**14)


def test_omega_constant():
    w = lambert_w(1)
    assert around(w, OMEGA_LO, OMEGA_HI)
    assert w.width <= Fraction(1, 2**63)


@pytest.mark.parametrize("precision", (16, 64, 256))
def test_width_follows_precision(precision):
    assert lambert_w(10, precision).width <= Fraction(2, 2**precision)


def test_domain():
    with pytest.raises(DomainError):
        lambert_w(-1)
    with pytest.raises(DomainError):
        lambert_w(Fraction(-1, 10**9))
    with pytest.raises(DomainError):
        lambert_w(1, precision=0)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=0, max_value=10**6, max_denominator=1000))
def test_inverse_identity(x):
    w = lambert_w(x)
    mid = DyadicInterval.exact(w.midpoint, 64 + GUARD_BITS)
    residual = mid * exp_interval(mid) - x
    assert max(abs(residual.lo), abs(residual.hi)) <= Fraction(1, 10**12) * max(1, x)


@settings(max_examples=30, deadline=None)
@given(
    st.fractions(min_value=0, max_value=1000, max_denominator=100),
    st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100),
)
def test_monotone(x, step):
    assert lambert_w(x).midpoint <= lambert_w(x + step).midpoint


def test_delta():
    assert around(delta(1, 1), OMEGA_LO, OMEGA_HI)
    assert around(delta(6, 6), "3.40285974245870323", "3.40285974245870324")
    assert delta(1, e_interval(64 + GUARD_BITS)).contains(1)
    assert around(delta(1, 10), "1.7455280027", "1.7455280028")
    # r^(1/b) scales the argument: W(4 / (1 * 4)) = W(1)
    assert around(delta(1, 4, r=4), OMEGA_LO, OMEGA_HI)


def test_delta_domain():
    with pytest.raises(DomainError):
        delta(0, 5)
    with pytest.raises(DomainError):
        delta(Fraction(-1, 2), 5)
    with pytest.raises(DomainError):
        delta(1, 5, r=0)


def test_root_interval():
    assert root_interval(8, 3, 64).contains(2)
    # 4^(2/3) = 16^(1/3)
    assert around(root_interval(4, Fraction(3, 2), 64), "2.5198420997", "2.5198420998")
