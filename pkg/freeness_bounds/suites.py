# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Verification checks, grouped into named suites.

A check is a function taking a single :class:`CheckContext`. It returns a short detail
string when it passes and raises (usually AssertionError) when it does not. Checks are
registered with the :func:`check` decorator, which validates their signature.
"""
import dataclasses
import inspect
import logging
import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from freeness_bounds.bounds import (
    TERM_BOUND_NAMES,
    BoundValue,
    bound_report,
    large_r_threshold,
    lower_construction,
    omega_offset,
    term_domination,
    term_upper_bounds,
    verdict,
    w_bracketing,
    w_form_gap,
)
from freeness_bounds.certified_reals import Ordering, RadicalSum, compare
from freeness_bounds.chains import (
    Chain,
    count_integer_chains,
    enumerate_integer_chains,
    random_rational_chain,
)
from freeness_bounds.errors import InvalidCheckError
from freeness_bounds.evaluator import f_eval, identity_sum, sumbound_upper, term_value
from freeness_bounds.intervals import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    DyadicInterval,
    e_interval,
    exp_interval,
)
from freeness_bounds.lambert_w import delta, lambert_w
from freeness_bounds.solver import (
    REFERENCE_ERRATA,
    REFERENCE_FLOORS,
    SolveResult,
    build_table,
    certify_erratum,
    solve_F,
    solve_F_bruteforce,
    solve_G_sixfold,
)

SUITES = ("table1", "sixfold", "bounds", "oracle", "appendix")

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SuiteLimits:
    """Problem sizes the suites sweep over."""

    table_n_max: int = 17
    monotone_n_max: int = 10
    oracle_n_max: int = 6
    oracle_r_max: int = 3
    dominance_n_max: int = 7
    random_chains: int = 200
    random_n_max: int = 6
    term_n_max: int = 40
    upper_n_max: int = 60
    bound_r_values: Tuple[int, ...] = (1, 2, 5)
    sixfold_n: int = 6
    construction_n_values: Tuple[int, ...] = (110, 150, 200)
    seed: int = 0


@dataclasses.dataclass
class CheckContext:
    """Data shared by the checks of a single suite run."""

    suite: str
    precision: int = DEFAULT_PRECISION
    limits: SuiteLimits = dataclasses.field(default_factory=SuiteLimits)
    _solves: Dict[Tuple[int, int], SolveResult] = dataclasses.field(default_factory=dict)

    def solve(self, n: int, r: int) -> SolveResult:
        """``solve_F(n, r)``, memoised for the duration of the run."""
        if (n, r) not in self._solves:
            self._solves[(n, r)] = solve_F(n, r)
        return self._solves[(n, r)]


Check = Callable[[CheckContext], str]

_REGISTRY: Dict[str, List[Check]] = {name: [] for name in SUITES}


def check_signature(fn: Callable):
    """Verify the signature of a check function.

    Will raise InvalidCheckError if:
    - the number of parameters is not exactly 1
    - the parameter is not positional only or positional/keyword

    Will log a warning if the one argument is annotated with anything other than
    CheckContext (or no annotation).
    """
    sig = inspect.signature(fn)
    if not len(sig.parameters) == 1:
        raise InvalidCheckError(
            f"check {fn.__name__} expects exactly one positional argument of type CheckContext."
        )
    par0 = list(sig.parameters.values())[0]
    if par0.kind not in (par0.POSITIONAL_OR_KEYWORD, par0.POSITIONAL_ONLY):
        raise InvalidCheckError(f"check {fn.__name__} expects its argument to be positional.")
    if par0.annotation not in (par0.empty, CheckContext, "CheckContext"):
        logger.warning(
            "check %s will receive a CheckContext as its only positional argument" % fn.__name__
        )


def check(suite: str) -> Callable[[Check], Check]:
    """Register the decorated function as a check of ``suite``."""
    if suite not in _REGISTRY:
        raise InvalidCheckError(f"unknown suite {suite!r}; expected one of {SUITES}")

    def register(fn: Check) -> Check:
        check_signature(fn)
        _REGISTRY[suite].append(fn)
        return fn

    return register


def collect_checks(suite: str) -> List[Check]:
    """Checks of ``suite`` in registration order; empty for an unknown suite."""
    return list(_REGISTRY.get(suite, ()))


def _require(condition: bool, msg: str):
    if not condition:
        raise AssertionError(msg)


# table1


@check("table1")
def check_reference_floors(ctx: CheckContext) -> str:
    n_max = min(ctx.limits.table_n_max, 17)
    cells = build_table(n_max, sorted(REFERENCE_FLOORS))
    mismatches = []
    for cell in cells:
        expected = REFERENCE_FLOORS[cell.r][cell.n - 2]
        if (cell.n, cell.r) in REFERENCE_ERRATA:
            expected = REFERENCE_ERRATA[(cell.n, cell.r)][0]
        if cell.floor_F != expected:
            mismatches.append(f"(n={cell.n}, r={cell.r}): {cell.floor_F} != {expected}")
    _require(not mismatches, "floor mismatches: " + ", ".join(mismatches))
    return f"{len(cells)} cells match"


@check("table1")
def check_reference_errata(ctx: CheckContext) -> str:
    corrected = [f"(n={n}, r={r}): {certify_erratum(n, r)}" for n, r in sorted(REFERENCE_ERRATA)]
    return "chains certify " + ", ".join(corrected)


@check("table1")
def check_small_exact_values(ctx: CheckContext) -> str:
    _require(ctx.solve(2, 1).value == 2, f"F(2, 1) = {ctx.solve(2, 1).value}, expected 2")
    expected = RadicalSum.rational(2) + RadicalSum.radical(1, 2, 2)
    got = ctx.solve(3, 1).value
    _require(got == expected, f"F(3, 1) = {got}, expected {expected}")
    return f"F(2, 1) = 2, F(3, 1) = {expected}"


@check("table1")
def check_floors_nondecreasing_in_n(ctx: CheckContext) -> str:
    for r in (1, 2):
        floors = [ctx.solve(n, r).floor for n in range(2, ctx.limits.table_n_max + 1)]
        _require(floors == sorted(floors), f"floors decrease along r={r}: {floors}")
    return "observed along both rows"


@check("table1")
def check_monotone_in_r(ctx: CheckContext) -> str:
    for n in range(1, ctx.limits.monotone_n_max + 1):
        for r in range(1, 4):
            order = compare(ctx.solve(n, r).value, ctx.solve(n, r + 1).value)
            _require(order is Ordering.less, f"F({n}, {r}) is not below F({n}, {r + 1})")
    return f"n <= {ctx.limits.monotone_n_max}, r <= 3"


@check("table1")
def check_sandwich(ctx: CheckContext) -> str:
    for n in range(1, ctx.limits.table_n_max + 1):
        for r in (1, 2):
            value = ctx.solve(n, r).value
            _require(
                compare(identity_sum(n, r), value) is not Ordering.greater,
                f"identity-chain sum exceeds F({n}, {r})",
            )
            _require(
                compare(value, sumbound_upper(n, r)) is not Ordering.greater,
                f"F({n}, {r}) exceeds the sum bound",
            )
    return f"n <= {ctx.limits.table_n_max}, r in (1, 2)"


# oracle


@check("oracle")
def check_dp_matches_bruteforce(ctx: CheckContext) -> str:
    for n in range(1, ctx.limits.oracle_n_max + 1):
        for r in range(1, ctx.limits.oracle_r_max + 1):
            fast, slow = ctx.solve(n, r), solve_F_bruteforce(n, r)
            _require(fast.value == slow.value, f"({n}, {r}): {fast.value} != {slow.value}")
            _require(f_eval(fast.witness, r) == fast.value, f"({n}, {r}): bad DP witness")
            _require(f_eval(slow.witness, r) == slow.value, f"({n}, {r}): bad oracle witness")
    return f"n <= {ctx.limits.oracle_n_max}, r <= {ctx.limits.oracle_r_max}"


@check("oracle")
def check_chain_count(ctx: CheckContext) -> str:
    counts = []
    for n in range(1, ctx.limits.dominance_n_max + 2):
        enumerated = sum(1 for _ in enumerate_integer_chains(n))
        _require(enumerated == count_integer_chains(n), f"chain count mismatch at n={n}")
        counts.append(enumerated)
    return f"counts {counts}"


@check("oracle")
def check_every_chain_dominated(ctx: CheckContext) -> str:
    total = 0
    for n in range(1, ctx.limits.dominance_n_max + 1):
        for r in (1, 2, 3):
            best = ctx.solve(n, r).value
            for chain in enumerate_integer_chains(n):
                _require(
                    compare(f_eval(chain, r), best) is not Ordering.greater,
                    f"{chain} beats F({n}, {r})",
                )
                total += 1
    return f"{total} chains"


@check("oracle")
def check_rational_chains_dominated(ctx: CheckContext) -> str:
    rng = random.Random(ctx.limits.seed)
    for _ in range(ctx.limits.random_chains):
        n = rng.randint(1, ctx.limits.random_n_max)
        r = rng.randint(1, 3)
        chain = random_rational_chain(rng, n)
        _require(
            compare(f_eval(chain, r), ctx.solve(n, r).value) is not Ordering.greater,
            f"{chain} beats F({n}, {r})",
        )
    return f"{ctx.limits.random_chains} random chains (seed {ctx.limits.seed})"


@check("oracle")
def check_identity_chain_closed_form(ctx: CheckContext) -> str:
    for n in range(1, ctx.limits.table_n_max + 1):
        chain = Chain(n, tuple((b, b) for b in range(n, 0, -1)))
        for r in (1, 2, 3):
            _require(f_eval(chain, r) == identity_sum(n, r), f"identity chain n={n}, r={r}")
    return f"n <= {ctx.limits.table_n_max}"


# sixfold


@check("sixfold")
def check_sixfold_below_eight(ctx: CheckContext) -> str:
    result = solve_G_sixfold(ctx.limits.sixfold_n)
    _require(
        compare(result.value, RadicalSum.rational(8)) is Ordering.less,
        f"G({ctx.limits.sixfold_n}) candidate {result.value} is not below 8",
    )
    return f"value {result.value} from {result.witness}"


@check("sixfold")
def check_sixfold_small_n(ctx: CheckContext) -> str:
    two = solve_G_sixfold(2)
    _require(
        compare(two.value, ctx.solve(2, 1).value) is not Ordering.greater,
        f"G(2) candidate {two.value} exceeds F(2, 1)",
    )
    three = solve_G_sixfold(3)
    integral = three.cases[0].best
    _require(
        compare(three.value, integral) is not Ordering.less,
        "G(3) candidate is below its own integral case",
    )
    return f"G(2) <= {two.value}, G(3) <= {three.value}"


# bounds


@check("bounds")
def check_term_bounds(ctx: CheckContext) -> str:
    failures, checked = [], 0
    for r in ctx.limits.bound_r_values:
        for n in range(1, ctx.limits.term_n_max + 1):
            for b in range(1, n + 1):
                bounds = term_upper_bounds(b, b, n, r, ctx.precision)
                for d in range(b, n + 1):
                    value = BoundValue.algebraic(term_value(b, d, n, r), ctx.precision)
                    for name in TERM_BOUND_NAMES:
                        ok = verdict(value, getattr(bounds, name), strict=False)
                        if ok is None:
                            ok = term_domination(b, d, n, r)[name]
                        checked += 1
                        if not ok:
                            failures.append(f"{name}(b={b}, d={d}, n={n}, r={r})")
    _require(not failures, "term bounds violated or undecided: " + ", ".join(failures))
    return f"{checked} term comparisons"


@check("bounds")
def check_upper_bounds_dominate(ctx: CheckContext) -> str:
    failures = []
    for r in ctx.limits.bound_r_values:
        for n in range(2, ctx.limits.upper_n_max + 1):
            report = bound_report(n, r, precision=ctx.precision, F=ctx.solve(n, r))
            for entry in report.entries:
                if entry.kind == "upper" and entry.dominates_F is not True:
                    failures.append(f"{entry.name}(n={n}, r={r}): {entry.dominates_F}")
    _require(not failures, "upper bounds not dominating: " + ", ".join(failures))
    return f"2 <= n <= {ctx.limits.upper_n_max}, r in {ctx.limits.bound_r_values}"


@check("bounds")
def check_lower_bounds_hold(ctx: CheckContext) -> str:
    for r in ctx.limits.bound_r_values:
        for n in range(2, ctx.limits.table_n_max + 1):
            report = bound_report(n, r, precision=ctx.precision, F=ctx.solve(n, r))
            lower = report.entry("easy_lower")
            _require(lower.dominates_F is True, f"easy lower bound fails at n={n}, r={r}")
    return f"2 <= n <= {ctx.limits.table_n_max}"


def _grid(precision: int):
    e = e_interval(precision + GUARD_BITS)
    for x in (Fraction(1, 10), Fraction(1, 2), 1, 2, e, 5, 10, 100, 10**6):
        yield x


@check("bounds")
def check_lambert_identity(ctx: CheckContext) -> str:
    for x in _grid(ctx.precision):
        w = lambert_w(x, ctx.precision)
        mid = DyadicInterval.exact(w.midpoint, ctx.precision + GUARD_BITS)
        arg = x if isinstance(x, DyadicInterval) else DyadicInterval.exact(x, mid.precision)
        residual = mid * exp_interval(mid) - arg
        tolerance = Fraction(1, 10**12) * max(1, arg.hi)
        _require(
            max(abs(residual.lo), abs(residual.hi)) <= tolerance,
            f"w e^w misses {x} by {residual}",
        )
    w_e = lambert_w(e_interval(ctx.precision + GUARD_BITS), ctx.precision)
    _require(w_e.contains(1), f"W(e) enclosure {w_e} misses 1")
    _require(w_e.width <= Fraction(1, 10**14), f"W(e) enclosure {w_e} is too wide")
    omega = omega_offset(ctx.precision)
    _require(
        Fraction(232, 100) < omega.lo and omega.hi < Fraction(234, 100),
        f"-log W(1) + 1/W(1) = {omega} outside (2.32, 2.34)",
    )
    return f"-log W(1) + 1/W(1) in {omega}"


@check("bounds")
def check_delta_monotone(ctx: CheckContext) -> str:
    for n in (10, 50, 110):
        previous = delta(1, n, 1, ctx.precision)
        for b in range(2, n + 1):
            current = delta(b, n, 1, ctx.precision)
            _require(previous.is_below(current), f"b W(n/b) not increasing at n={n}, b={b}")
            previous = current
    return "n in (10, 50, 110)"


@check("bounds")
def check_w_form_equivalence(ctx: CheckContext) -> str:
    for n in (5, 10, 50, 110):
        for r in ctx.limits.bound_r_values:
            for b in range(1, min(n, 8) + 1):
                gap = w_form_gap(b, n, r, ctx.precision)
                _require(
                    max(abs(gap.lo), abs(gap.hi)) <= Fraction(n, 10**10),
                    f"W forms disagree at b={b}, n={n}, r={r}: {gap}",
                )
    return "b <= 8, n in (5, 10, 50, 110)"


@check("bounds")
def check_w_bracketing(ctx: CheckContext) -> str:
    for x in range(1, 201):
        bracket = w_bracketing(x, ctx.precision)
        _require(bracket.above_half_log is True, f"W({x}) < log({x}) / 2")
        if x >= 3:
            _require(bracket.below_log is True, f"W({x}) > log({x})")
    return "1 <= x <= 200"


# appendix


@check("appendix")
def check_construction(ctx: CheckContext) -> str:
    details = []
    for n in ctx.limits.construction_n_values:
        report = lower_construction(n, strict=True, precision=ctx.precision)
        _require(report.chain.bs[1] == n // 10, f"b_1 = {report.chain.bs[1]} at n={n}")
        _require(report.gap_two, f"consecutive d gaps below 2 at n={n}")
        _require(all(report.lemma_conditions), f"W window conditions fail at n={n}")
        _require(report.holds is True, f"f value below n log log n / (4e) at n={n}")
        details.append(f"n={n}: {report.target}")
    return "; ".join(details)


@check("appendix")
def check_large_r_threshold(ctx: CheckContext) -> str:
    expected = {2: 1, 3: 2}
    for n, threshold in expected.items():
        scan = large_r_threshold(n, 10)
        _require(scan.threshold == threshold, f"threshold {scan.threshold} at n={n}")
        _require(
            all(equal for r, equal in scan.certificates if r >= threshold),
            f"missing equality certificate at n={n}",
        )
    return "thresholds 1 (n=2) and 2 (n=3) up to r=10"
