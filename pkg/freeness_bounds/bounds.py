# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Closed-form upper and lower bounds on F(n, r), evaluated with certified intervals.

Algebraic bounds keep their exact :class:`RadicalSum` next to the enclosure and are
compared exactly; transcendental ones (through ``e``, ``log`` and W) are intervals only and
are compared by enclosure at 64 bits, then once more at 256 bits on overlap.
"""
import dataclasses
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from freeness_bounds.certified_reals import (
    MAX_PRECISION,
    Ordering,
    RadicalSum,
    compare,
    enclose,
)
from freeness_bounds.chains import Chain, Violation, validate_chain
from freeness_bounds.errors import (
    CertificationError,
    ConstructionInfeasibleError,
    DomainError,
    SizeGuardError,
)
from freeness_bounds.evaluator import f_eval, identity_sum, term_value
from freeness_bounds.intervals import (
    DEFAULT_PRECISION,
    ESCALATED_PRECISION,
    GUARD_BITS,
    DyadicInterval,
    e_interval,
    exp_interval,
    log_interval,
)
from freeness_bounds.lambert_w import delta, lambert_w
from freeness_bounds.schemas import SweepRow
from freeness_bounds.solver import SOLVE_GUARD_N, SolveResult, solve_F

LOGLOG_CONSTANT = Fraction(234, 100)
LEMMA_THRESHOLD = 10
PROOF_THRESHOLD = 110
LARGE_R_MAX_N = 6

TERM_BOUND_NAMES = ("young", "refined", "wbased")

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class BoundValue:
    """An enclosure, plus the exact value when the bound is algebraic."""

    interval: DyadicInterval
    exact: Optional[RadicalSum] = None

    @classmethod
    def algebraic(cls, value: RadicalSum, precision: int = DEFAULT_PRECISION) -> "BoundValue":
        return cls(enclose(value, precision), value)


def verdict(lower: BoundValue, upper: BoundValue, strict: bool) -> Optional[bool]:
    """Whether ``lower < upper`` (or ``<=``); None when the enclosures cannot tell."""
    if lower.exact is not None and upper.exact is not None:
        order = compare(lower.exact, upper.exact)
        return order is Ordering.less or (not strict and order is Ordering.equal)
    if lower.interval.is_below(upper.interval):
        return True
    if not strict and lower.interval.hi <= upper.interval.lo:
        return True
    if lower.interval.is_above(upper.interval):
        return False
    return None


def _escalating(evaluate: Callable[[int], Dict[str, Optional[bool]]]) -> Dict[str, Optional[bool]]:
    """Run ``evaluate`` at 64 bits, and again at 256 bits for whatever stayed undecided."""
    out = evaluate(DEFAULT_PRECISION)
    if any(v is None for v in out.values()):
        logger.debug("escalating %s to %d bits" % (sorted(out), ESCALATED_PRECISION))
        retry = evaluate(ESCALATED_PRECISION)
        out = {key: retry[key] if value is None else value for key, value in out.items()}
    return out


def _check_nr(n: int, r: int):
    if n < 1 or r < 1:
        raise DomainError(f"n and r must be positive, got n={n}, r={r}")


def _loglog(n: int, precision: int) -> DyadicInterval:
    if n <= 1:
        raise DomainError(f"log log n is undefined for n <= 1, got n={n}")
    return log_interval(log_interval(DyadicInterval.exact(n, precision)))


def _root(r: int, b: int) -> RadicalSum:
    return RadicalSum.radical(1, r, b)


# term level


@dataclasses.dataclass(frozen=True)
class TermBounds:
    young: BoundValue
    """``r^(1/b) + n - b``."""
    refined: BoundValue
    """``r^(1/b) + e n / b - e``."""
    wbased: BoundValue
    """``r^(1/b) exp(W(n / (b r^(1/b))))``."""


def term_upper_bounds(
    b: int, d: int, n: int, r: int, precision: int = DEFAULT_PRECISION
) -> TermBounds:
    """Three upper bounds for ``term_value(b, d, n, r)``; none of them depends on ``d``."""
    if not (1 <= b <= d <= n) or r < 1:
        raise DomainError(f"term bounds need 1 <= b <= d <= n and r >= 1, got {(b, d, n, r)}")
    root = _root(r, b)
    root_interval = enclose(root, precision)
    young = BoundValue.algebraic(root + (n - b), precision)
    if b == n:
        refined = BoundValue.algebraic(root, precision)
    else:
        refined = BoundValue(root_interval + e_interval(precision) * Fraction(n - b, b))
    x = DyadicInterval.exact(n, precision) / (root_interval * b)
    wbased = BoundValue(root_interval * exp_interval(lambert_w(x, precision)))
    return TermBounds(young, refined, wbased)


def term_domination(b: int, d: int, n: int, r: int) -> Dict[str, Optional[bool]]:
    """For each term bound, whether the exact term is certified not to exceed it."""
    term = term_value(b, d, n, r)

    def evaluate(precision: int) -> Dict[str, Optional[bool]]:
        bounds = term_upper_bounds(b, d, n, r, precision)
        value = BoundValue.algebraic(term, precision)
        return {
            name: verdict(value, getattr(bounds, name), strict=False) for name in TERM_BOUND_NAMES
        }

    return _escalating(evaluate)


def w_form_gap(b: int, n: int, r: int, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Enclosure of ``r^(1/b) e^(W(x)) - n / delta(b)`` with ``x = n / (b r^(1/b))``.

    The two forms agree, so the enclosure straddles zero.
    """
    root_interval = enclose(_root(r, b), precision)
    x = DyadicInterval.exact(n, precision) / (root_interval * b)
    w_form = root_interval * exp_interval(lambert_w(x, precision))
    return w_form - DyadicInterval.exact(n, precision) / delta(b, n, r, precision)


# global upper bounds


def upper_simple(n: int, r: int, precision: int = DEFAULT_PRECISION) -> BoundValue:
    """``n (n - 1) / 2 + sum_{b=1}^n r^(1/b)``, exact."""
    _check_nr(n, r)
    return BoundValue.algebraic(identity_sum(n, r) + Fraction(n * (n - 1), 2), precision)


def upper_enlogn(n: int, r: int, precision: int = DEFAULT_PRECISION) -> BoundValue:
    """``e n log n + sum_{b=1}^n r^(1/b)``."""
    _check_nr(n, r)
    tail = identity_sum(n, r)
    if n == 1:
        return BoundValue.algebraic(tail, precision)
    log_n = log_interval(DyadicInterval.exact(n, precision))
    return BoundValue(e_interval(precision) * n * log_n + enclose(tail, precision))


def upper_loglog(n: int, r: int, precision: int = DEFAULT_PRECISION) -> BoundValue:
    """``max{n + 1, n (log log n + 2.34)}`` for r = 1, else ``r + n - 1 + sqrt(r) n (...)``."""
    _check_nr(n, r)
    core = (_loglog(n, precision) + LOGLOG_CONSTANT) * n
    if r == 1:
        return BoundValue(DyadicInterval.exact(n + 1, precision).maximum(core))
    sqrt_r = enclose(_root(r, 2), precision)
    return BoundValue(sqrt_r * core + (r + n - 1))


# lower bounds


@dataclasses.dataclass(frozen=True)
class EasyLowerBound:
    first: DyadicInterval
    """``r^(1/n) n log log n / (4e)``."""
    second: RadicalSum
    """``sum_{b=1}^n r^(1/b)``."""
    bound: BoundValue
    """The larger of the two; exact when ``second`` is certified to be the larger."""


def lower_easy(n: int, r: int, precision: int = DEFAULT_PRECISION) -> EasyLowerBound:
    _check_nr(n, r)
    root_n = enclose(_root(r, n), precision)
    first = root_n * n * _loglog(n, precision) / (e_interval(precision) * 4)
    second = identity_sum(n, r)
    second_interval = enclose(second, precision)
    if first.is_below(second_interval):
        bound = BoundValue(second_interval, second)
    else:
        bound = BoundValue(first.maximum(second_interval))
    return EasyLowerBound(first, second, bound)


def lower_target(n: int, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """``n log log n / (4e)``."""
    return _loglog(n, precision) * n / (e_interval(precision) * 4)


def _certified_ceil(enclosure_at: Callable[[int], DyadicInterval], precision: int) -> int:
    while precision <= MAX_PRECISION:
        interval = enclosure_at(precision)
        k = math.ceil(interval.hi)
        if interval.lo > k - 1:
            return k
        precision *= 2
    raise CertificationError(f"could not certify a ceiling within {MAX_PRECISION} bits")


@dataclasses.dataclass(frozen=True)
class ConstructionReport:
    """The chain ``b = (n, floor(n/10), ..., 1)``, ``d_j = b_j + ceil(b_j W(n / b_j))``.

    Nothing here asserts the conclusion: every condition is reported as data.
    """

    n: int
    chain: Chain
    violations: Tuple[Violation, ...]
    value: Optional[RadicalSum]
    """``f`` at ``r = 1``; None when the chain is invalid."""
    target: DyadicInterval
    holds: Optional[bool]
    """Whether ``value >= n log log n / (4e)``; None when undecided or invalid."""
    gap_two: bool
    lemma_conditions: Tuple[bool, ...]
    """Per ``j >= 1``: ``b_j W(n/b_j) <= d_j - b_j <= 2 b_j W(n/b_j)``."""
    b1_within_tenth: bool
    lemma_threshold: int = LEMMA_THRESHOLD
    proof_threshold: int = PROOF_THRESHOLD

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def in_proven_range(self) -> bool:
        return self.n >= self.proof_threshold


def lower_construction(
    n: int, strict: bool = False, precision: int = DEFAULT_PRECISION
) -> ConstructionReport:
    """Build and check the lower-bound chain for ``F(n, 1)``.

    The construction is proven to work for ``n >= 110``; below that it is still built and
    every condition is reported. With ``strict=True`` an invalid chain raises
    ConstructionInfeasibleError.
    """
    if n < 2:
        raise DomainError(f"the construction needs n >= 2, got n={n}")
    if n < PROOF_THRESHOLD:
        logger.warning(
            "construction at n=%d lies outside the proven range n >= %d" % (n, PROOF_THRESHOLD)
        )
    pairs = [(n, n)]
    conditions = []
    for b in range(n // 10, 0, -1):
        ceiling = _certified_ceil(lambda p: delta(b, n, 1, p), precision)
        spread = delta(b, n, 1, precision)
        conditions.append(spread.hi <= ceiling and ceiling <= spread.lo * 2)
        pairs.append((b, b + ceiling))
    chain = Chain(n, tuple(pairs))
    violations = tuple(validate_chain(chain))
    ds = chain.ds
    gap_two = all(ds[j] - ds[j + 1] >= 2 for j in range(1, len(ds) - 1))
    b1_within_tenth = chain.s == 0 or chain.bs[1] * 10 <= n
    target = lower_target(n, precision)

    value, holds = None, None
    if violations:
        msg = f"construction for n={n} is not a valid chain: " + "; ".join(map(str, violations))
        if strict:
            raise ConstructionInfeasibleError(msg)
        logger.warning(msg)
    else:
        value = f_eval(chain, 1)
        holds = _escalating(
            lambda p: {
                "holds": verdict(
                    BoundValue(lower_target(n, p)), BoundValue.algebraic(value, p), strict=False
                )
            }
        )["holds"]
    return ConstructionReport(
        n=n,
        chain=chain,
        violations=violations,
        value=value,
        target=target,
        holds=holds,
        gap_two=gap_two,
        lemma_conditions=tuple(conditions),
        b1_within_tenth=b1_within_tenth,
    )


@dataclasses.dataclass(frozen=True)
class LargeRThreshold:
    n: int
    r_limit: int
    threshold: Optional[int]
    certificates: Tuple[Tuple[int, bool], ...]
    """``(r, F(n, r) == sum_b r^(1/b))`` for every r scanned, from ``r_limit`` down."""


def large_r_threshold(n: int, r_limit: int) -> LargeRThreshold:
    """Smallest ``r0`` such that F equals the identity-chain sum for all r in ``[r0, r_limit]``."""
    if n < 2 or r_limit < 1:
        raise DomainError(f"large-r scan needs n >= 2 and r_limit >= 1, got {(n, r_limit)}")
    if n > LARGE_R_MAX_N:
        raise SizeGuardError(f"large-r scan is limited to n <= {LARGE_R_MAX_N}, got n={n}")
    threshold, certificates = None, []
    for r in range(r_limit, 0, -1):
        equal = solve_F(n, r).value == identity_sum(n, r)
        certificates.append((r, equal))
        if not equal:
            break
        threshold = r
    return LargeRThreshold(n, r_limit, threshold, tuple(certificates))


# constants and W facts


def omega_offset(precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """``-log W(1) + 1/W(1)``; ``2.34`` is a rational upper bound for it."""
    work = precision + GUARD_BITS
    w = lambert_w(1, work)
    return (1 / w - log_interval(w)).with_precision(precision)


@dataclasses.dataclass(frozen=True)
class WBracket:
    x: int
    above_half_log: Optional[bool]
    """``W(x) >= log(x) / 2``."""
    below_log: Optional[bool]
    """``W(x) <= log x``; None below ``e`` where it does not apply."""


def w_bracketing(x: int, precision: int = DEFAULT_PRECISION) -> WBracket:
    if x < 1:
        raise DomainError(f"W bracketing is checked for x >= 1, got {x}")

    def evaluate(p: int) -> Dict[str, Optional[bool]]:
        w = BoundValue(lambert_w(x, p))
        log_x = log_interval(DyadicInterval.exact(x, p))
        out = {"above_half_log": verdict(BoundValue(log_x * Fraction(1, 2)), w, strict=False)}
        if x >= 3:
            out["below_log"] = verdict(w, BoundValue(log_x), strict=False)
        return out

    out = _escalating(evaluate)
    return WBracket(x, out["above_half_log"], out.get("below_log"))


# reports


UPPER_BOUNDS: Dict[str, Callable[[int, int, int], BoundValue]] = {
    "young_sum": upper_simple,
    "enlogn_sum": upper_enlogn,
    "loglog_thm": upper_loglog,
}
LOWER_BOUNDS: Dict[str, Callable[[int, int, int], BoundValue]] = {
    "easy_lower": lambda n, r, p: lower_easy(n, r, p).bound,
}


@dataclasses.dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str
    """``"upper"`` or ``"lower"``."""
    value: BoundValue
    dominates_F: Optional[bool] = None
    """Meaningful only when the report carries F."""


@dataclasses.dataclass(frozen=True)
class BoundReport:
    n: int
    r: int
    F: Optional[SolveResult]
    entries: Tuple[BoundEntry, ...]
    construction: Optional[ConstructionReport] = None

    def entry(self, name: str) -> BoundEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)


def _dominance(
    kind: str, evaluate_bound: Callable[[int], BoundValue], F: SolveResult
) -> Optional[bool]:
    def evaluate(precision: int) -> Dict[str, Optional[bool]]:
        bound = evaluate_bound(precision)
        value = BoundValue.algebraic(F.value, precision)
        if kind == "upper":
            return {"dominates": verdict(value, bound, strict=True)}
        return {"dominates": verdict(bound, value, strict=False)}

    return _escalating(evaluate)["dominates"]


def bound_report(
    n: int,
    r: int,
    with_construction: bool = False,
    precision: int = DEFAULT_PRECISION,
    solve_guard: int = SOLVE_GUARD_N,
    F: Optional[SolveResult] = None,
) -> BoundReport:
    """Every bound for ``(n, r)``, with verdicts against ``F(n, r)`` when ``n <= solve_guard``.

    An already computed ``F`` may be passed in to skip the solve.
    """
    _check_nr(n, r)
    if n < 2:
        raise DomainError(f"bound reports need n >= 2 (log log n), got n={n}")
    logger.info("bound report for n=%d, r=%d" % (n, r))
    if F is None and n <= solve_guard:
        F = solve_F(n, r)

    construction = lower_construction(n, precision=precision) if with_construction else None
    named = [("upper", name, fn) for name, fn in UPPER_BOUNDS.items()]
    named += [("lower", name, fn) for name, fn in LOWER_BOUNDS.items()]
    if construction is not None and construction.value is not None:
        exact = construction.value
        named.append(
            ("lower", "construction_lower", lambda n_, r_, p: BoundValue.algebraic(exact, p))
        )

    entries = []
    for kind, name, fn in named:
        value = fn(n, r, precision)
        dominates = None
        if F is not None:
            dominates = _dominance(kind, lambda p, fn=fn: fn(n, r, max(p, precision)), F)
            if dominates is None:
                logger.warning("%s bound %s is undecided against F(%d, %d)" % (kind, name, n, r))
        entries.append(BoundEntry(name, kind, value, dominates))
    return BoundReport(n, r, F, tuple(entries), construction)


def bound_sweep(
    n_values: Iterable[int],
    r: int,
    precision: int = DEFAULT_PRECISION,
    solve_guard: int = SOLVE_GUARD_N,
) -> List[SweepRow]:
    """Plot-ready midpoints of every bound, and of F where it is within the guard."""
    rows = []
    for n in n_values:
        if n < 2:
            raise DomainError(f"sweeps start at n = 2, got n={n}")
        values = {name: fn(n, r, precision) for name, fn in UPPER_BOUNDS.items()}
        values.update({name: fn(n, r, precision) for name, fn in LOWER_BOUNDS.items()})
        F = ""
        if n <= solve_guard:
            F = solve_F(n, r).enclosure.format_midpoint()
        rows.append(
            SweepRow(
                n=n,
                r=r,
                F=F,
                **{name: value.interval.format_midpoint() for name, value in values.items()},
            )
        )
    return rows
