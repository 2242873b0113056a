# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Exact sums of rational multiples of real roots of positive integers.

A :class:`RadicalSum` is a finite sum ``q_1 * k_1^(1/d_1) + ... + q_m * k_m^(1/d_m)`` kept
in canonical form: every radical ``k^(1/d)`` has its perfect-power content extracted into
the coefficient and its index ``d`` reduced to the minimum, and like radicals are merged.
Real roots of multiplicatively independent canonical radicands are linearly independent
over the rationals, so two sums are equal exactly when their canonical term sets coincide.
Order is decided by enclosing the difference in dyadic intervals of doubling precision.

For example:

>>> a = parse_radsum("2 + 1 * 2^(1/2)")
>>> b = RadicalSum.radical(2, 2, 2)
>>> compare(a, b)
<Ordering.greater: 'greater'>
>>> floor_certified(a)
3
"""
import logging
import math
import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, NamedTuple, Tuple, Union

from sympy import factorint, integer_nthroot, isprime

from freeness_bounds.errors import CertificationError, DomainError
from freeness_bounds.intervals import DEFAULT_PRECISION, DyadicInterval

Rational = Fraction
RationalLike = Union[int, Fraction]

FACTORIZATION_LIMIT = 10**6
MAX_PRECISION = 1 << 14

_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)(?: \* (\d+)\^\(1/(\d+)\))?$")

logger = logging.getLogger(__name__)


class Ordering(str, Enum):
    less = "less"
    equal = "equal"
    greater = "greater"


class RadicalTerm(NamedTuple):
    """The real number ``coeff * radicand^(1/index)``."""

    coeff: Fraction
    radicand: int
    index: int

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff} * {self.radicand}^(1/{self.index})"


def _factor(k: int) -> Dict[int, int]:
    """Prime factorization: trial division up to FACTORIZATION_LIMIT, then a full split
    of whatever composite cofactor is left."""
    factors: Dict[int, int] = {}
    for p, e in factorint(k, limit=FACTORIZATION_LIMIT).items():
        if p > FACTORIZATION_LIMIT and not isprime(p):
            for q, f in factorint(p).items():
                factors[q] = factors.get(q, 0) + f * e
        else:
            factors[p] = factors.get(p, 0) + e
    return factors


@lru_cache(maxsize=None)
def _reduce_radical(k: int, d: int) -> Tuple[int, int, int]:
    """Write ``k^(1/d)`` as ``outside * radicand^(1/index)`` with minimal index."""
    if d == 1:
        return k, 1, 1
    if k == 1:
        return 1, 1, 1
    factors = _factor(k)
    outside = 1
    while True:
        g = math.gcd(d, *factors.values())
        if g > 1:
            d //= g
            factors = {p: e // g for p, e in factors.items()}
        remaining = {}
        for p, e in factors.items():
            q, rem = divmod(e, d)
            outside *= p**q
            if rem:
                remaining[p] = rem
        factors = remaining
        if not factors:
            return outside, 1, 1
        if math.gcd(d, *factors.values()) == 1:
            break
    return outside, math.prod(p**e for p, e in factors.items()), d


def canonicalize_term(coeff: RationalLike, k: int, d: int) -> RadicalTerm:
    """Return the canonical term equal to ``coeff * k^(1/d)``.

    Perfect-power content of ``k`` moves into the coefficient and ``d`` is reduced to its
    minimum, so ``8^(1/6)`` becomes ``1 * 2^(1/2)`` and ``4^(1/2)`` becomes ``2``.
    """
    if k < 1 or d < 1:
        raise DomainError(f"radical {k}^(1/{d}) needs k >= 1 and d >= 1")
    coeff = Fraction(coeff)
    if coeff == 0:
        return RadicalTerm(Fraction(0), 1, 1)
    outside, radicand, index = _reduce_radical(k, d)
    return RadicalTerm(coeff * outside, radicand, index)


class RadicalSum:
    """Immutable canonical sum of radical terms; the empty sum is exactly zero."""

    __slots__ = ("_terms", "_hash", "_enclosures")

    def __init__(self, terms: Iterable[RadicalTerm] = ()):
        acc: Dict[Tuple[int, int], Fraction] = {}
        for term in terms:
            coeff, radicand, index = canonicalize_term(*term)
            if coeff:
                key = (radicand, index)
                acc[key] = acc.get(key, 0) + coeff
        self._init({key: c for key, c in acc.items() if c})

    def _init(self, terms: Dict[Tuple[int, int], Fraction]):
        self._terms = terms
        self._hash = None
        self._enclosures: Dict[int, DyadicInterval] = {}

    @classmethod
    def _from_canonical(cls, terms: Dict[Tuple[int, int], Fraction]) -> "RadicalSum":
        out = cls.__new__(cls)
        out._init(terms)
        return out

    @classmethod
    def rational(cls, q: RationalLike) -> "RadicalSum":
        q = Fraction(q)
        return cls._from_canonical({(1, 1): q} if q else {})

    @classmethod
    def radical(cls, coeff: RationalLike, k: int, d: int) -> "RadicalSum":
        """The single-term sum ``coeff * k^(1/d)``."""
        return cls([canonicalize_term(coeff, k, d)])

    @property
    def terms(self) -> Tuple[RadicalTerm, ...]:
        """Canonical terms sorted by (index, radicand); the rational part comes first."""
        return tuple(
            RadicalTerm(self._terms[key], *key)
            for key in sorted(self._terms, key=lambda key: (key[1], key[0]))
        )

    @property
    def is_rational(self) -> bool:
        return all(key == (1, 1) for key in self._terms)

    @property
    def rational_part(self) -> Fraction:
        return self._terms.get((1, 1), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Ordering.less

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is not Ordering.greater

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Ordering.greater

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is not Ordering.less

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return radsum_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self._from_canonical({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return radsum_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, q):
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return radsum_scale(q, self)

    __rmul__ = __mul__

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(str(term) for term in self.terms)

    def __repr__(self):
        return f"RadicalSum({str(self)!r})"


def _coerce(value) -> "RadicalSum":
    if isinstance(value, RadicalSum):
        return value
    if isinstance(value, (int, Fraction)):
        return RadicalSum.rational(value)
    return NotImplemented


ZERO = RadicalSum()


def radsum_add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    if not b._terms:
        return a
    if not a._terms:
        return b
    terms = dict(a._terms)
    for key, c in b._terms.items():
        total = terms.get(key, 0) + c
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return RadicalSum._from_canonical(terms)


def radsum_scale(q: RationalLike, a: RadicalSum) -> RadicalSum:
    q = Fraction(q)
    if q == 0:
        return ZERO
    if q == 1:
        return a
    return RadicalSum._from_canonical({key: q * c for key, c in a._terms.items()})


@lru_cache(maxsize=1 << 16)
def _root_floor(k: int, d: int, work: int) -> Tuple[int, bool]:
    """floor(k^(1/d) * 2^work), and whether it is exact."""
    root, exact = integer_nthroot(k << (d * work), d)
    return int(root), bool(exact)


def enclose(a: RadicalSum, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Enclose ``a`` in a dyadic interval of width at most ``2^(1 - precision)``."""
    if precision < 1:
        raise DomainError(f"precision must be positive, got {precision}")
    cached = a._enclosures.get(precision)
    if cached is not None:
        return cached
    if not a._terms:
        out = DyadicInterval(0, 0, 0, precision)
    else:
        guard = len(a._terms).bit_length() + 2
        headroom = max(
            (abs(c.numerator) // c.denominator + 1).bit_length() for c in a._terms.values()
        )
        work = precision + guard + headroom + 2
        lo = hi = 0
        for (k, d), c in a._terms.items():
            root_lo, exact = _root_floor(k, d, work)
            root_hi = root_lo if exact else root_lo + 1
            num, den = c.numerator, c.denominator
            if num < 0:
                root_lo, root_hi = root_hi, root_lo
            lo += (num * root_lo) // den
            hi += -((-num * root_hi) // den)
        shift = work - precision - 1
        out = DyadicInterval(lo >> shift, -((-hi) >> shift), -(precision + 1), precision)
    a._enclosures[precision] = out
    return out


def compare(a: RadicalSum, b: RadicalSum, max_precision: int = MAX_PRECISION) -> Ordering:
    """Certified three-way comparison of two radical sums."""
    if a is b or a._terms == b._terms:
        return Ordering.equal
    ia, ib = enclose(a), enclose(b)
    if ia.is_below(ib):
        return Ordering.less
    if ia.is_above(ib):
        return Ordering.greater
    diff = radsum_add(a, -b)
    precision = 2 * DEFAULT_PRECISION
    while precision <= max_precision:
        logger.debug("refining comparison of %s and %s at %d bits", a, b, precision)
        interval = enclose(diff, precision)
        if interval.hi_man < 0:
            return Ordering.less
        if interval.lo_man > 0:
            return Ordering.greater
        precision *= 2
    raise CertificationError(
        f"could not separate {a} from {b} within {max_precision} bits of precision"
    )


def floor_with_enclosure(
    a: RadicalSum, max_precision: int = MAX_PRECISION, precision: int = DEFAULT_PRECISION
) -> Tuple[int, DyadicInterval]:
    """The exact floor of ``a`` and an enclosure of ``a`` contained in ``[floor, floor + 1)``.

    Refinement starts at ``precision`` bits and doubles up to ``max_precision``.
    """
    max_precision = max(max_precision, precision)
    if a.is_rational:
        n = math.floor(a.rational_part)
        while True:
            interval = enclose(a, precision)
            if n <= interval.lo and interval.hi < n + 1:
                return n, interval
            precision *= 2
    while precision <= max_precision:
        interval = enclose(a, precision)
        n = math.floor(interval.lo)
        if interval.hi < n + 1:
            return n, interval
        precision *= 2
    raise CertificationError(f"could not certify the floor of {a} within {max_precision} bits")


def floor_certified(a: RadicalSum) -> int:
    return floor_with_enclosure(a)[0]


def parse_radsum(text: str) -> RadicalSum:
    """Parse the serialization produced by ``str(RadicalSum)``."""
    text = text.strip()
    if text == "0":
        return ZERO
    terms = []
    for chunk in text.split(" + "):
        match = _TERM_RE.match(chunk.strip())
        if not match:
            raise ValueError(f"malformed radical term: {chunk!r}")
        coeff, radicand, index = match.groups()
        if radicand is None:
            terms.append(RadicalTerm(Fraction(coeff), 1, 1))
        else:
            terms.append(RadicalTerm(Fraction(coeff), int(radicand), int(index)))
    return RadicalSum(terms)

