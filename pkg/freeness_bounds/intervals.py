# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Dyadic interval arithmetic with outward rounding.

Endpoints are exact dyadic rationals ``man * 2**exponent`` held as python integers.
Addition, subtraction and multiplication are carried out exactly and then rounded
outward; division, ``exp`` and ``log`` go through the directed-rounding interval
primitives of ``mpmath.libmp``, so no floating-point hardware semantics are involved.
"""
import dataclasses
from fractions import Fraction
from functools import cached_property
from typing import Optional, Tuple, Union

from mpmath import libmp

from freeness_bounds.errors import CertificationError, DomainError

DEFAULT_PRECISION = 64
ESCALATED_PRECISION = 256
GUARD_BITS = 32

# mantissas longer than precision + _SLACK bits get rounded outward
_SLACK = 8

Number = Union[int, Fraction]


def _ceil_shift(man: int, shift: int) -> int:
    return -((-man) >> shift)


def _to_fraction(man: int, exponent: int) -> Fraction:
    if exponent >= 0:
        return Fraction(man << exponent)
    return Fraction(man, 1 << -exponent)


def _round_fraction(value: Fraction, exponent: int, upward: bool) -> int:
    """Round ``value / 2**exponent`` to an integer, downward or upward."""
    num, den = value.numerator, value.denominator
    if exponent >= 0:
        den <<= exponent
    else:
        num <<= -exponent
    if upward:
        return -((-num) // den)
    return num // den


def _grid_exponent(value: Fraction, precision: int) -> int:
    magnitude = abs(value.numerator).bit_length() - value.denominator.bit_length()
    return magnitude - precision - 2


def _raw_to_dyadic(raw) -> Tuple[int, int]:
    sign, man, exp, bc = raw
    if bc == -1:
        raise CertificationError("interval primitive returned a non-finite endpoint")
    man = int(man)
    return (-man if sign else man), exp


@dataclasses.dataclass(frozen=True)
class DyadicInterval:
    """A closed interval ``[lo_man, hi_man] * 2**exponent`` enclosing a real number."""

    lo_man: int
    hi_man: int
    exponent: int
    precision: int = DEFAULT_PRECISION
    """Nominal precision in bits; governs outward rounding of derived intervals."""

    def __post_init__(self):
        if self.lo_man > self.hi_man:
            raise ValueError(f"improper interval: {self.lo_man} > {self.hi_man}")

    @classmethod
    def exact(cls, value: Number, precision: int = DEFAULT_PRECISION) -> "DyadicInterval":
        """The tightest interval around ``value``; degenerate when ``value`` is dyadic."""
        return cls.from_fractions(value, value, precision)

    @classmethod
    def from_fractions(
        cls, lo: Number, hi: Number, precision: int = DEFAULT_PRECISION
    ) -> "DyadicInterval":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"improper interval: {lo} > {hi}")
        exps = [
            _grid_exponent(v, precision) if (v.denominator & (v.denominator - 1)) else None
            for v in (lo, hi)
        ]
        if exps[0] is None and exps[1] is None:
            # both endpoints dyadic: represent exactly
            exponent = -max(lo.denominator.bit_length(), hi.denominator.bit_length()) + 1
        else:
            exponent = min(e for e in exps if e is not None)
            exponent = min(exponent, -lo.denominator.bit_length(), -hi.denominator.bit_length())
        return cls._normalized(
            _round_fraction(lo, exponent, upward=False),
            _round_fraction(hi, exponent, upward=True),
            exponent,
            precision,
        )

    @classmethod
    def from_mpi(cls, raw, precision: int = DEFAULT_PRECISION) -> "DyadicInterval":
        """Convert an ``mpmath.libmp`` raw interval (pair of raw mpfs)."""
        lo_man, lo_exp = _raw_to_dyadic(raw[0])
        hi_man, hi_exp = _raw_to_dyadic(raw[1])
        exponent = min(lo_exp, hi_exp)
        return cls._normalized(
            lo_man << (lo_exp - exponent), hi_man << (hi_exp - exponent), exponent, precision
        )

    @classmethod
    def _normalized(cls, lo_man: int, hi_man: int, exponent: int, precision: int):
        excess = max(lo_man.bit_length(), hi_man.bit_length()) - precision - _SLACK
        if excess > 0:
            lo_man >>= excess
            hi_man = _ceil_shift(hi_man, excess)
            exponent += excess
        return cls(lo_man, hi_man, exponent, precision)

    def to_mpi(self):
        return (
            libmp.from_man_exp(self.lo_man, self.exponent),
            libmp.from_man_exp(self.hi_man, self.exponent),
        )

    @cached_property
    def lo(self) -> Fraction:
        return _to_fraction(self.lo_man, self.exponent)

    @cached_property
    def hi(self) -> Fraction:
        return _to_fraction(self.hi_man, self.exponent)

    @property
    def width(self) -> Fraction:
        return _to_fraction(self.hi_man - self.lo_man, self.exponent)

    @property
    def midpoint(self) -> Fraction:
        return _to_fraction(self.lo_man + self.hi_man, self.exponent - 1)

    @property
    def is_exact(self) -> bool:
        return self.lo_man == self.hi_man

    def with_precision(self, precision: int) -> "DyadicInterval":
        return self._normalized(self.lo_man, self.hi_man, self.exponent, precision)

    def _align(self, other: "DyadicInterval") -> Tuple[int, int, int, int, int]:
        exponent = min(self.exponent, other.exponent)
        s, o = self.exponent - exponent, other.exponent - exponent
        return self.lo_man << s, self.hi_man << s, other.lo_man << o, other.hi_man << o, exponent

    def _coerce(self, other) -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return DyadicInterval.exact(other, self.precision)
        return NotImplemented

    def __add__(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a_lo, a_hi, b_lo, b_hi, exponent = self._align(other)
        return self._normalized(
            a_lo + b_lo, a_hi + b_hi, exponent, max(self.precision, other.precision)
        )

    __radd__ = __add__

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi_man, -self.lo_man, self.exponent, self.precision)

    def __sub__(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "DyadicInterval":
        return (-self) + other

    def __mul__(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        products = [
            a * b for a in (self.lo_man, self.hi_man) for b in (other.lo_man, other.hi_man)
        ]
        return self._normalized(
            min(products),
            max(products),
            self.exponent + other.exponent,
            max(self.precision, other.precision),
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo_man <= 0 <= other.hi_man:
            raise DomainError("interval division by an interval containing zero")
        precision = max(self.precision, other.precision)
        raw = libmp.mpi_div(self.to_mpi(), other.to_mpi(), precision + GUARD_BITS)
        return DyadicInterval.from_mpi(raw, precision)

    def __rtruediv__(self, other) -> "DyadicInterval":
        return DyadicInterval.exact(other, self.precision) / self

    def contains(self, value: Number) -> bool:
        return self.lo <= value <= self.hi

    def is_below(self, other: "DyadicInterval") -> bool:
        """True iff every point of this interval is strictly less than every point of ``other``."""
        _, a_hi, b_lo, _, _ = self._align(other)
        return a_hi < b_lo

    def is_above(self, other: "DyadicInterval") -> bool:
        return other.is_below(self)

    def overlaps(self, other: "DyadicInterval") -> bool:
        return not (self.is_below(other) or self.is_above(other))

    def intersect(self, other: "DyadicInterval") -> Optional["DyadicInterval"]:
        a_lo, a_hi, b_lo, b_hi, exponent = self._align(other)
        lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
        if lo > hi:
            return None
        return self._normalized(lo, hi, exponent, self.precision)

    def maximum(self, other: "DyadicInterval") -> "DyadicInterval":
        """Enclosure of ``max(x, y)`` for x in this interval and y in ``other``."""
        a_lo, a_hi, b_lo, b_hi, exponent = self._align(other)
        return self._normalized(max(a_lo, b_lo), max(a_hi, b_hi), exponent, self.precision)

    def format_endpoints(self, digits: int = 20) -> Tuple[str, str]:
        """Decimal renderings of the endpoints, rounded outward."""
        return _decimal(self.lo, digits, upward=False), _decimal(self.hi, digits, upward=True)

    def format_midpoint(self, digits: int = 12) -> str:
        return _decimal(self.midpoint, digits, upward=False)

    def __str__(self):
        lo, hi = self.format_endpoints()
        return f"[{lo}, {hi}]"


def _decimal(value: Fraction, digits: int, upward: bool) -> str:
    scaled = value * 10**digits
    num, den = scaled.numerator, scaled.denominator
    q = -((-num) // den) if upward else num // den
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def exp_interval(x: DyadicInterval) -> DyadicInterval:
    return DyadicInterval.from_mpi(
        libmp.mpi_exp(x.to_mpi(), x.precision + GUARD_BITS), x.precision
    )


def log_interval(x: DyadicInterval) -> DyadicInterval:
    if x.lo_man <= 0:
        raise DomainError(f"log of an interval reaching non-positive values: {x}")
    return DyadicInterval.from_mpi(
        libmp.mpi_log(x.to_mpi(), x.precision + GUARD_BITS), x.precision
    )


def e_interval(precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    work = precision + GUARD_BITS
    raw = (libmp.mpf_e(work, libmp.round_floor), libmp.mpf_e(work, libmp.round_ceiling))
    return DyadicInterval.from_mpi(raw, precision)


def as_interval(value, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Lift an int, Fraction or DyadicInterval to a DyadicInterval."""
    if isinstance(value, DyadicInterval):
        return value
    if isinstance(value, (int, Fraction)):
        return DyadicInterval.exact(value, precision)
    raise TypeError(f"cannot convert {type(value).__name__} to an interval")
