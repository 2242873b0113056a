# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Certified maximization of f over integral chains, and the sixfold bound on g.

``solve_F`` is a dynamic program over the states ``(b, d)``: the best completion ``M(b, d)``
either stops (contributing ``b * v(b, d)``) or steps to some ``(b', d')`` with ``b' < b``
and ``b' <= d' < d``. The inner maximum over ``d'`` depends only on ``(b', d)``, so it is
kept as a prefix maximum and the whole table costs ``O(n^3)`` candidate offers. Every
offer is first screened with interval enclosures; only candidates that are not certified
below the incumbent are built exactly and compared.
"""
import dataclasses
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from freeness_bounds.certified_reals import (
    Ordering,
    RadicalSum,
    compare,
    enclose,
    floor_certified,
    floor_with_enclosure,
    radsum_add,
    radsum_scale,
)
from freeness_bounds.chains import (
    Chain,
    SixfoldProfile,
    binom_cap,
    enumerate_integer_chains,
    validate_chain,
)
from freeness_bounds.errors import CertificationError, DomainError, SizeGuardError
from freeness_bounds.evaluator import f_eval, g_bound_nonintegral, g_eval, term_value
from freeness_bounds.intervals import DEFAULT_PRECISION, DyadicInterval
from freeness_bounds.schemas import TableCell

BRUTEFORCE_MAX_N = 8
TABLE_MAX_N = 40
SOLVE_GUARD_N = 60

# floor(F(n, r)) for n = 2..17
REFERENCE_FLOORS: Dict[int, Tuple[int, ...]] = {
    1: (2, 3, 4, 6, 8, 9, 11, 13, 15, 17, 19, 21, 24, 26, 28, 30),
    2: (3, 4, 6, 8, 10, 11, 13, 15, 18, 20, 22, 24, 26, 28, 30, 33),
}

# Reference cells lying below the floor of an explicit chain: (n, r) -> (floor, chain)
REFERENCE_ERRATA: Dict[Tuple[int, int], Tuple[int, str]] = {
    (7, 2): (12, "b=[7,5,4,3,2,1]; d=[7,6,5,4,3,2]"),
    (8, 2): (14, "b=[8,6,5,4,3,2,1]; d=[8,7,6,5,4,3,2]"),
    (9, 2): (16, "b=[9,6,5,4,3,2,1]; d=[9,8,7,6,5,4,2]"),
    (15, 2): (29, "b=[15,12,10,9,8,7,6,5,4,3,2,1]; d=[15,14,13,12,11,10,9,8,7,6,5,3]"),
    (16, 2): (31, "b=[16,13,11,10,9,8,7,6,5,4,3,2,1]; d=[16,15,14,13,12,11,10,9,8,7,6,5,3]"),
}

logger = logging.getLogger(__name__)

Pairs = Tuple[Tuple[Union[int, Fraction], int], ...]


@dataclasses.dataclass
class SolveStats:
    """Work counters of a single solve."""

    states: int = 0
    """DP states, or chains visited by an exhaustive search."""
    candidates: int = 0
    pruned: int = 0
    """Candidates discarded on interval enclosures alone."""
    exact_comparisons: int = 0

    def as_dict(self) -> Dict[str, int]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class NonIntegralCandidate:
    """Integral prefix followed by one non-integral pair ``(2/m_i, 2)``."""

    n: int
    prefix: Pairs
    m_i: int

    @property
    def b_i(self) -> Fraction:
        return Fraction(2, self.m_i)

    @property
    def pairs(self) -> Pairs:
        return tuple(self.prefix) + ((self.b_i, 2),)

    def text(self) -> str:
        bs = ",".join(str(Fraction(b)) for b, _ in self.pairs)
        ds = ",".join(str(d) for _, d in self.pairs)
        return f"b=[{bs}]; d=[{ds}]; m_i={self.m_i}"

    def __str__(self):
        return self.text()


Witness = Union[Chain, SixfoldProfile, NonIntegralCandidate]


@dataclasses.dataclass(frozen=True)
class SixfoldCase:
    """Best candidate of one branch of the sixfold analysis."""

    name: str
    scored: int
    best: Optional[RadicalSum]
    witness: Optional[Witness]


@dataclasses.dataclass(frozen=True)
class SolveResult:
    value: RadicalSum
    witness: Witness
    floor: int
    enclosure: DyadicInterval
    """Enclosure of ``value`` lying inside ``[floor, floor + 1)``."""
    stats: SolveStats
    cases: Tuple[SixfoldCase, ...] = ()


class _Node(NamedTuple):
    value: RadicalSum
    interval: DyadicInterval
    pairs: Pairs
    payload: object = None


def _tie_key(pairs: Pairs):
    return len(pairs), tuple(d for _, d in pairs), tuple(b for b, _ in pairs)


class _Incumbent:
    """Running maximum: larger value first, then shorter chain, then smaller d and b vectors."""

    def __init__(self, stats: SolveStats):
        self._stats = stats
        self.node: Optional[_Node] = None

    def offer(
        self,
        interval: DyadicInterval,
        build: Callable[[], RadicalSum],
        pairs: Pairs,
        payload: object = None,
    ) -> bool:
        self._stats.candidates += 1
        best = self.node
        if best is None:
            self._take(build(), pairs, payload)
            return True
        if interval.is_below(best.interval):
            self._stats.pruned += 1
            return False
        value = build()
        if interval.is_above(best.interval):
            order = Ordering.greater
        else:
            self._stats.exact_comparisons += 1
            order = compare(value, best.value)
        if order is Ordering.greater or (
            order is Ordering.equal and _tie_key(pairs) < _tie_key(best.pairs)
        ):
            self._take(value, pairs, payload)
            return True
        return False

    def offer_node(self, node: _Node) -> bool:
        return self.offer(node.interval, lambda: node.value, node.pairs, node.payload)

    def _take(self, value: RadicalSum, pairs: Pairs, payload: object):
        self.node = _Node(value, enclose(value), tuple(pairs), payload)


def _check_nr(n: int, r: int):
    if n < 1 or r < 1:
        raise DomainError(f"n and r must be positive, got n={n}, r={r}")


def _result(
    value: RadicalSum,
    witness: Witness,
    stats: SolveStats,
    cases=(),
    precision: int = DEFAULT_PRECISION,
) -> SolveResult:
    floor, interval = floor_with_enclosure(value, precision=precision)
    return SolveResult(value, witness, floor, interval, stats, tuple(cases))


def _certify_chain_witness(chain: Chain, r: int, value: RadicalSum):
    if validate_chain(chain) or f_eval(chain, r) != value:
        raise CertificationError(f"witness {chain} does not reproduce the value {value}")


def solve_F(n: int, r: int, precision: int = DEFAULT_PRECISION) -> SolveResult:
    """Exact ``F(n, r)``: the maximum of f over all integral chains, with a witness.

    ``precision`` sets the bits of the pruning enclosures and of the first floor certification.
    """
    _check_nr(n, r)
    logger.info("solving F(%d, %d)" % (n, r))
    stats = SolveStats()
    completions: Dict[Tuple[int, int], _Node] = {}
    # tails[(b', D)]: best completion M(b', d') over b' <= d' <= D - 1
    tails: Dict[Tuple[int, int], _Node] = {}

    for b in range(1, n + 1):
        for d in range(b, n + 1):
            stats.states += 1
            term = term_value(b, d, n, r)
            term_interval = enclose(term, precision)
            incumbent = _Incumbent(stats)
            incumbent.offer(term_interval * b, lambda: radsum_scale(b, term), ((b, d),))
            for b_next in range(b - 1, 0, -1):
                tail = tails[(b_next, d)]
                step = b - b_next
                incumbent.offer(
                    term_interval * step + tail.interval,
                    lambda: radsum_add(radsum_scale(step, term), tail.value),
                    ((b, d),) + tail.pairs,
                )
            completions[(b, d)] = incumbent.node
        running = _Incumbent(stats)
        for bound in range(b + 1, n + 1):
            running.offer_node(completions[(b, bound - 1)])
            tails[(b, bound)] = running.node
        logger.debug("F(%d, %d): completions for b = %d settled" % (n, r, b))

    root = completions[(n, n)]
    chain = Chain(n, root.pairs)
    _certify_chain_witness(chain, r, root.value)
    result = _result(root.value, chain, stats, precision=precision)
    logger.info(
        "F(%d, %d) = %s (floor %d) with %s" % (n, r, result.value, result.floor, stats.as_dict())
    )
    return result


def solve_F_bruteforce(n: int, r: int) -> SolveResult:
    """Same contract as ``solve_F``, by exhaustive iteration over every integral chain."""
    _check_nr(n, r)
    if n > BRUTEFORCE_MAX_N:
        raise SizeGuardError(
            f"exhaustive search is limited to n <= {BRUTEFORCE_MAX_N}, got n={n}"
        )
    stats = SolveStats()
    incumbent = _Incumbent(stats)
    for chain in enumerate_integer_chains(n):
        stats.states += 1
        value = f_eval(chain, r)
        incumbent.offer(enclose(value), lambda: value, chain.pairs, chain)
    best = incumbent.node
    _certify_chain_witness(best.payload, r, best.value)
    return _result(best.value, best.payload, stats)


def pinned_profile(chain: Chain) -> SixfoldProfile:
    """Profile with every multiplicity at its largest feasible value.

    ``m_i = binom(n - b_i, n - d_i)``, further clipped to ``floor(2 / b_i)`` when ``d_i = 2``.
    """
    ms = []
    for b, d in chain.pairs[1:]:
        m = binom_cap(chain.n, b, d)
        if d == 2:
            m = min(m, math.floor(Fraction(2) / b))
        ms.append(m)
    return SixfoldProfile(chain.n, chain.pairs, tuple(ms))


def _admits_d1(chain: Chain) -> bool:
    return chain.s == 0 or chain.ds[1] != chain.n - 1


def nonintegral_prefixes(chains: Iterable[Chain]) -> Iterable[Chain]:
    """Integral chains that may precede a distinguished pair ``(2/m, 2)``."""
    for chain in chains:
        if chain.ds[-1] <= 2:
            continue
        # the distinguished pair becomes d_1 when the prefix is only (n, n)
        if chain.s == 0 and chain.n - 1 == 2:
            continue
        if not _admits_d1(chain):
            continue
        yield chain


def solve_G_sixfold(n: int) -> SolveResult:
    """Certified upper bound for ``G(n)`` from the two-case analysis of sixfold profiles.

    Case ``integral`` scores every integral profile (``d_1 != n - 1``) with pinned
    multiplicities using g. Case ``nonintegral`` scores, for every admissible integral
    prefix and every ``m_i`` in ``3 .. n - 1``, the bounding expression of
    ``g_bound_nonintegral``. The reported value is the larger of the two bests; it is a
    candidate maximum, not a claim about ``G(n)`` itself.
    """
    if n < 2:
        raise DomainError(f"sixfold bound needs n >= 2, got n={n}")
    if n > BRUTEFORCE_MAX_N:
        raise SizeGuardError(
            f"the sixfold analysis enumerates every chain and is limited to "
            f"n <= {BRUTEFORCE_MAX_N}, got n={n}"
        )
    logger.info("bounding G(%d)" % n)
    stats = SolveStats()
    chains = list(enumerate_integer_chains(n))
    stats.states = len(chains)

    integral, integral_count = _Incumbent(stats), 0
    for chain in chains:
        if not _admits_d1(chain):
            continue
        profile = pinned_profile(chain)
        value = g_eval(profile)
        integral.offer(enclose(value), lambda: value, chain.pairs, profile)
        integral_count += 1

    nonintegral, nonintegral_count = _Incumbent(stats), 0
    for prefix in nonintegral_prefixes(chains):
        for m_i in range(3, n):
            value = g_bound_nonintegral(n, prefix.pairs, m_i)
            candidate = NonIntegralCandidate(n, prefix.pairs, m_i)
            nonintegral.offer(enclose(value), lambda: value, candidate.pairs, candidate)
            nonintegral_count += 1

    cases = tuple(
        SixfoldCase(
            name,
            count,
            incumbent.node.value if incumbent.node else None,
            incumbent.node.payload if incumbent.node else None,
        )
        for name, count, incumbent in (
            ("integral", integral_count, integral),
            ("nonintegral", nonintegral_count, nonintegral),
        )
    )
    best = integral.node
    if nonintegral.node is not None and compare(nonintegral.node.value, best.value) is (
        Ordering.greater
    ):
        best = nonintegral.node

    witness = best.payload
    if isinstance(witness, SixfoldProfile):
        recomputed = g_eval(witness)
    else:
        recomputed = g_bound_nonintegral(n, witness.prefix, witness.m_i)
    if recomputed != best.value:
        raise CertificationError(f"witness {witness} does not reproduce the value {best.value}")

    result = _result(best.value, witness, stats, cases)
    for case in cases:
        logger.info(
            "G(%d) case %s: %d candidates, best %s" % (n, case.name, case.scored, case.best)
        )
    return result


def table_cell(n: int, r: int, result: SolveResult) -> TableCell:
    return TableCell(
        n=n,
        r=r,
        floor_F=result.floor,
        exact_value=str(result.value),
        witness_b=result.witness.b_text(),
        witness_d=result.witness.d_text(),
    )


def build_table(
    n_max: int, r_values: Iterable[int], precision: int = DEFAULT_PRECISION
) -> List[TableCell]:
    """One cell per ``(n, r)``, ``n`` from 2 to ``n_max``, grouped by ``r``."""
    if n_max < 2:
        raise DomainError(f"the table starts at n = 2, got n_max={n_max}")
    r_values = list(r_values)
    if not r_values or any(r < 1 for r in r_values):
        raise DomainError(f"r values must be positive integers, got {r_values}")
    cells = []
    for r in r_values:
        for n in range(2, n_max + 1):
            cells.append(table_cell(n, r, solve_F(n, r, precision)))
    return cells


def reference_floor(n: int, r: int) -> int:
    """The published ``floor(F(n, r))`` for ``2 <= n <= 17`` and ``r`` in (1, 2)."""
    if r not in REFERENCE_FLOORS or not 2 <= n <= len(REFERENCE_FLOORS[r]) + 1:
        raise DomainError(f"no reference floor for n={n}, r={r}")
    return REFERENCE_FLOORS[r][n - 2]


def certify_erratum(n: int, r: int) -> int:
    """Certify a reference erratum from its chain alone and return the corrected floor.

    The chain must be valid, its exact value must floor to the corrected entry, and that
    entry must lie above the published one.
    """
    if (n, r) not in REFERENCE_ERRATA:
        raise DomainError(f"no erratum is recorded for n={n}, r={r}")
    corrected, witness = REFERENCE_ERRATA[(n, r)]
    value = f_eval(Chain.parse(witness, n=n), r)
    floor = floor_certified(value)
    if floor != corrected:
        raise CertificationError(f"chain {witness} floors to {floor}, recorded {corrected}")
    if floor <= reference_floor(n, r):
        raise CertificationError(
            f"chain {witness} does not exceed the reference floor {reference_floor(n, r)}"
        )
    return floor
