# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Verified principal branch of Lambert's W on the nonnegative reals.

W is the inverse of ``u(w) = w * e^w`` on ``[0, inf)``. The root is bracketed and then
narrowed by interval Newton on ``u(w) - x``; when a Newton step fails to shrink the
bracket a certified bisection step is taken instead.
"""
import logging
from fractions import Fraction
from typing import Union

from freeness_bounds.certified_reals import RadicalSum, canonicalize_term, enclose
from freeness_bounds.errors import CertificationError, DomainError
from freeness_bounds.intervals import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    DyadicInterval,
    as_interval,
    e_interval,
    exp_interval,
    log_interval,
)

MAX_ITERATIONS = 400

logger = logging.getLogger(__name__)

Argument = Union[int, Fraction, DyadicInterval]


def _initial_bracket(x: DyadicInterval, work: int) -> DyadicInterval:
    """A bracket for W over the whole argument interval ``x``."""
    e = e_interval(work)
    one = DyadicInterval.exact(1, work)
    zero = DyadicInterval.exact(0, work)
    if x.is_below(e):
        return DyadicInterval.from_fractions(0, 1, work)
    hi = one.maximum(log_interval(DyadicInterval.exact(x.hi, work)))
    lo = zero
    if x.lo > e.hi:
        # W(t) >= log t - log log t for t >= e
        log_lo = log_interval(DyadicInterval.exact(x.lo, work))
        lo = zero.maximum(log_lo - log_interval(log_lo) - 1)
    return DyadicInterval.from_fractions(lo.lo, hi.hi, work)


def lambert_w(x: Argument, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Enclose W(x) for x >= 0.

    ``x`` may be an exact rational or a DyadicInterval (e.g. an enclosure of ``e``); for an
    interval argument the result encloses W over the whole interval. For exact arguments
    the width is at most ``2^(1 - precision)``.
    """
    if precision < 1:
        raise DomainError(f"precision must be positive, got {precision}")
    work = precision + GUARD_BITS
    arg = as_interval(x, work).with_precision(work)
    if arg.lo_man < 0:
        raise DomainError(f"W is only defined here on nonnegative reals, got {x}")
    if arg.hi_man == 0:
        return DyadicInterval(0, 0, 0, precision)

    target = Fraction(1, 1 << precision)
    bracket = _initial_bracket(arg, work)
    for step in range(MAX_ITERATIONS):
        if bracket.width <= target:
            break
        m = DyadicInterval.exact(bracket.midpoint, work)
        fm = m * exp_interval(m) - arg
        slope = (bracket + 1) * exp_interval(bracket)
        newton = bracket.intersect(m - fm / slope)
        if newton is None:
            raise CertificationError(f"interval Newton lost the root of W({x})")
        if newton.width * 4 <= bracket.width * 3:
            bracket = newton
        elif fm.lo_man > 0:
            bracket = DyadicInterval.from_fractions(bracket.lo, m.hi, work)
        elif fm.hi_man < 0:
            bracket = DyadicInterval.from_fractions(m.lo, bracket.hi, work)
        else:
            # u(m) - x is undecidable at this working precision
            bracket = newton
            break
    else:
        raise CertificationError(f"W({x}) did not converge in {MAX_ITERATIONS} iterations")
    logger.debug("W(%s) enclosed in %s after %d steps" % (x, bracket, step))
    return DyadicInterval(bracket.lo_man, bracket.hi_man, bracket.exponent, precision)


def root_interval(r: int, b: Union[int, Fraction], precision: int) -> DyadicInterval:
    """Enclose ``r^(1/b)`` for a positive rational ``b = p/q`` as ``(r^q)^(1/p)``."""
    b = Fraction(b)
    term = canonicalize_term(1, r**b.denominator, b.numerator)
    return enclose(RadicalSum([term]), precision)


def delta(
    b: Union[int, Fraction],
    n: Argument,
    r: int = 1,
    precision: int = DEFAULT_PRECISION,
) -> DyadicInterval:
    """Enclose ``delta(b) = b * W(n / (b * r^(1/b)))``."""
    if Fraction(b) <= 0:
        raise DomainError(f"delta needs b > 0, got {b}")
    if r < 1:
        raise DomainError(f"delta needs r >= 1, got {r}")
    work = precision + GUARD_BITS
    scale = DyadicInterval.exact(Fraction(b), work) * root_interval(r, b, work)
    w = lambert_w(as_interval(n, work) / scale, work)
    return (w * Fraction(b)).with_precision(precision)
