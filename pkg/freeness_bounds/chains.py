# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Chains ``(b, d)`` of the feasible regions and their sixfold refinement with multiplicities.

A chain for dimension ``n`` is a list of pairs ``[(b_0, d_0), ..., (b_s, d_s)]`` with
``b_0 = d_0 = n``, both coordinates strictly decreasing to positive values and
``b_i <= d_i``. The terminal pair ``(0, 0)`` is implicit. A sixfold profile adds
multiplicities ``m_1 ... m_s`` (``m_0`` is fixed to 1).

Violations of the defining conditions are returned as data by the ``validate_*``
functions; nothing here raises on an invalid chain.
"""
import dataclasses
import math
import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

BValue = Union[int, Fraction]
Pair = Tuple[Fraction, int]

_LIST_RE = r"\[([^\]]*)\]"
_CHAIN_RE = re.compile(rf"^b={_LIST_RE};\s*d={_LIST_RE}(?:;\s*m={_LIST_RE})?$")


def _fmt(value: BValue) -> str:
    return str(Fraction(value))


def _parse_list(text: str, cast) -> List:
    text = text.strip()
    if not text:
        return []
    return [cast(item.strip()) for item in text.split(",")]


@dataclasses.dataclass(frozen=True)
class Violation:
    """A violated defining condition of a chain or profile."""

    condition: str
    """Short name of the condition, e.g. ``"d_decreasing"``."""
    index: int
    """Index ``i`` of the offending pair (0 for the leading pair)."""
    message: str

    def __str__(self):
        return f"{self.condition}[{self.index}]: {self.message}"


@dataclasses.dataclass(frozen=True)
class Chain:
    n: int
    pairs: Tuple[Pair, ...]
    """Pairs ``(b_i, d_i)`` with the leading ``(n, n)``; the terminal ``(0, 0)`` is implicit."""

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((Fraction(b), int(d)) for b, d in self.pairs)
        )

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[BValue, int]], n: int = None) -> "Chain":
        """Build a chain; ``n`` defaults to the leading ``d_0``."""
        if n is None:
            n = int(pairs[0][1])
        return cls(n, tuple(pairs))

    @property
    def s(self) -> int:
        return len(self.pairs) - 1

    @property
    def bs(self) -> Tuple[Fraction, ...]:
        return tuple(b for b, _ in self.pairs)

    @property
    def ds(self) -> Tuple[int, ...]:
        return tuple(d for _, d in self.pairs)

    @property
    def is_integral(self) -> bool:
        return all(b.denominator == 1 for b in self.bs)

    def b_next(self, i: int) -> Fraction:
        """``b_{i+1}``, with the implicit terminal ``b_{s+1} = 0``."""
        return self.pairs[i + 1][0] if i + 1 < len(self.pairs) else Fraction(0)

    def b_text(self) -> str:
        return "[" + ",".join(_fmt(b) for b in self.bs) + "]"

    def d_text(self) -> str:
        return "[" + ",".join(str(d) for d in self.ds) + "]"

    def text(self) -> str:
        return f"b={self.b_text()}; d={self.d_text()}"

    def __str__(self):
        return self.text()

    @classmethod
    def parse(cls, text: str, n: int = None) -> "Chain":
        match = _CHAIN_RE.match(text.strip())
        if not match:
            raise ValueError(f"malformed chain: {text!r}")
        bs = _parse_list(match.group(1), Fraction)
        ds = _parse_list(match.group(2), int)
        if len(bs) != len(ds) or not bs:
            raise ValueError(f"b and d must be non-empty lists of equal length: {text!r}")
        return cls.from_pairs(list(zip(bs, ds)), n)


@dataclasses.dataclass(frozen=True)
class SixfoldProfile:
    n: int
    pairs: Tuple[Pair, ...]
    m: Tuple[int, ...]
    """Multiplicities ``m_1 ... m_s``; ``m_0 = 1`` is implicit."""

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((Fraction(b), int(d)) for b, d in self.pairs)
        )
        object.__setattr__(self, "m", tuple(int(m) for m in self.m))

    @property
    def chain(self) -> Chain:
        return Chain(self.n, self.pairs)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        """``(m_0, m_1, ..., m_s)`` with ``m_0 = 1``."""
        return (1,) + self.m

    def text(self) -> str:
        return f"{self.chain.text()}; m=[" + ",".join(str(m) for m in self.m) + "]"

    def __str__(self):
        return self.text()

    @classmethod
    def parse(cls, text: str, n: int = None) -> "SixfoldProfile":
        match = _CHAIN_RE.match(text.strip())
        if not match or match.group(3) is None:
            raise ValueError(f"malformed profile: {text!r}")
        chain = Chain.parse(f"b=[{match.group(1)}]; d=[{match.group(2)}]", n)
        return cls(chain.n, chain.pairs, tuple(_parse_list(match.group(3), int)))


def binom_cap(n: int, b: BValue, d: int) -> int:
    """``binom(n - ceil(b), n - d)``, with ``binom(0, 0) = 1``."""
    top, bottom = n - math.ceil(Fraction(b)), n - d
    if top < 0 or bottom < 0:
        return 0
    return math.comb(top, bottom)


def validate_chain(c: Chain) -> List[Violation]:
    """Every violated condition of the region of chains; empty when ``c`` is valid."""
    out: List[Violation] = []
    if c.n < 1:
        out.append(Violation("n_positive", 0, f"n must be positive, got {c.n}"))
    if not c.pairs:
        out.append(Violation("leading", 0, "chain has no leading pair"))
        return out
    b0, d0 = c.pairs[0]
    if b0 != c.n or d0 != c.n:
        out.append(Violation("leading", 0, f"(b_0, d_0) must be ({c.n}, {c.n}), got ({b0}, {d0})"))
    for i in range(1, len(c.pairs)):
        (b_prev, d_prev), (b, d) = c.pairs[i - 1], c.pairs[i]
        if not b < b_prev:
            out.append(Violation("b_decreasing", i, f"b_{i} = {b} is not below {b_prev}"))
        if not d < d_prev:
            out.append(Violation("d_decreasing", i, f"d_{i} = {d} is not below {d_prev}"))
        if b <= 0:
            out.append(Violation("b_positive", i, f"b_{i} = {b} must be positive"))
        if d <= 0:
            out.append(Violation("d_positive", i, f"d_{i} = {d} must be positive"))
        if b > d:
            out.append(Violation("b_le_d", i, f"b_{i} = {b} exceeds d_{i} = {d}"))
    return out


def validate_profile(p: SixfoldProfile) -> List[Violation]:
    """Chain conditions plus the multiplicity cap, the curve rule and ``d_1 != n - 1``."""
    out = validate_chain(p.chain)
    s = len(p.pairs) - 1
    if len(p.m) != s:
        out.append(Violation("m_length", 0, f"expected {s} multiplicities, got {len(p.m)}"))
        return out
    for i in range(1, s + 1):
        (b, d), m = p.pairs[i], p.m[i - 1]
        if m < 1:
            out.append(Violation("m_positive", i, f"m_{i} = {m} must be positive"))
            continue
        cap = binom_cap(p.n, b, d)
        if m > cap:
            out.append(Violation("m_cap", i, f"m_{i} = {m} exceeds binom cap {cap}"))
        if d == 2 and b > Fraction(2, m):
            out.append(Violation("curve_rule", i, f"b_{i} = {b} exceeds 2/m = {Fraction(2, m)}"))
    if s >= 1 and p.pairs[1][1] == p.n - 1:
        out.append(Violation("d1_not_n_minus_1", 1, f"d_1 must differ from n - 1 = {p.n - 1}"))
    return out


def _completions(b: int, d: int) -> Iterator[Tuple[Pair, ...]]:
    """Suffixes after a pair ``(b, d)``: depth first, decreasing b then decreasing d."""
    yield ()
    for b_next in range(b - 1, 0, -1):
        for d_next in range(d - 1, b_next - 1, -1):
            for tail in _completions(b_next, d_next):
                yield ((Fraction(b_next), d_next),) + tail


def enumerate_integer_chains(n: int) -> Iterator[Chain]:
    """Every valid chain with integral b for dimension ``n``, each exactly once."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lead = ((Fraction(n), n),)
    for tail in _completions(n, n):
        yield Chain(n, lead + tail)


def random_rational_chain(rng: random.Random, n: int, max_denominator: int = 16) -> Chain:
    """A uniformly-ish drawn valid chain whose b entries have denominators <= max_denominator."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    while True:
        s = rng.randint(0, n - 1)
        ds = sorted(rng.sample(range(1, n), s), reverse=True)
        pairs = [(Fraction(n), n)]
        for d in ds:
            ceiling = min(Fraction(d), pairs[-1][0])
            q = rng.randint(1, max_denominator)
            top = math.floor(ceiling * q)
            if top < 1:
                break
            b = Fraction(rng.randint(1, top), q)
            if b >= pairs[-1][0]:
                break
            pairs.append((b, d))
        else:
            return Chain(n, tuple(pairs))


@lru_cache(maxsize=None)
def _count_from(b: int, d: int) -> int:
    return 1 + sum(
        _count_from(b_next, d_next) for b_next in range(1, b) for d_next in range(b_next, d)
    )


def count_integer_chains(n: int) -> int:
    """Number of valid integral chains, counted over ``(b, d)`` states without enumerating."""
    return _count_from(n, n)
