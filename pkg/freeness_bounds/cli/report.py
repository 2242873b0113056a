# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
from fractions import Fraction
from pathlib import Path
from typing import Optional

import typer

from freeness_bounds.bounds import (
    BoundReport,
    ConstructionReport,
    bound_report,
    bound_sweep,
)
from freeness_bounds.cli.output import configure_logging, emit, exit_codes, int_list
from freeness_bounds.intervals import GUARD_BITS, e_interval
from freeness_bounds.lambert_w import lambert_w
from freeness_bounds.schemas import (
    BoundDocument,
    BoundRow,
    ConstructionSummary,
    LambertWDocument,
    RunConfig,
    SweepDocument,
)
from freeness_bounds.solver import SOLVE_GUARD_N

_FORMAT_HELP = "Output format: csv, json or text."


def _verdict(value: Optional[bool], computed: bool) -> str:
    if not computed:
        return ""
    return {True: "true", False: "false", None: "undecided"}[value]


def construction_summary(report: ConstructionReport) -> ConstructionSummary:
    lo, hi = report.target.format_endpoints()
    return ConstructionSummary(
        n=report.n,
        chain=report.chain.text(),
        valid=report.valid,
        violations=[str(v) for v in report.violations],
        value="" if report.value is None else str(report.value),
        target_lo=lo,
        target_hi=hi,
        holds=_verdict(report.holds, report.valid),
        gap_two=report.gap_two,
        lemma_conditions=all(report.lemma_conditions),
        b1_within_tenth=report.b1_within_tenth,
        in_proven_range=report.in_proven_range,
        lemma_threshold=report.lemma_threshold,
        proof_threshold=report.proof_threshold,
    )


def bound_document(report: BoundReport) -> BoundDocument:
    rows = []
    for entry in report.entries:
        lo, hi = entry.value.interval.format_endpoints()
        rows.append(
            BoundRow(
                n=report.n,
                r=report.r,
                bound_name=entry.name,
                lo=lo,
                hi=hi,
                exact_part="" if entry.value.exact is None else str(entry.value.exact),
                dominates_F=_verdict(entry.dominates_F, report.F is not None),
            )
        )
    return BoundDocument(
        n=report.n,
        r=report.r,
        F_floor=None if report.F is None else report.F.floor,
        F_value=None if report.F is None else str(report.F.value),
        rows=rows,
        construction=(
            None if report.construction is None else construction_summary(report.construction)
        ),
    )


def bounds(
    n: Optional[int] = typer.Option(None, "--n", help="Dimension n (n >= 2)."),
    r: int = typer.Option(1, "--r", help="Parameter r."),
    sweep: Optional[str] = typer.Option(
        None, "--sweep", help="Plot-ready sweep over n, e.g. '2..60' or '2,5,10'."
    ),
    with_construction: bool = typer.Option(
        False, "--with-construction", help="Include the explicit lower-bound chain."
    ),
    solve_guard: int = typer.Option(
        SOLVE_GUARD_N, "--solve-guard", help="Compute F only for n up to this value."
    ),
    precision: int = typer.Option(64, "--precision", help="Interval precision in bits."),
    fmt: str = typer.Option("text", "--format", help=_FORMAT_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Closed-form bounds on F(n, r) with certified verdicts against F."""
    with exit_codes():
        if n is None and sweep is None:
            raise ValueError("one of --n or --sweep is required")
        config = RunConfig(
            command="bounds",
            n=n,
            r=[r],
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        if sweep is not None:
            _sweep(config, int_list(sweep), solve_guard)
        else:
            _bounds(config, with_construction, solve_guard)


def _bounds(
    config: RunConfig, with_construction: bool = False, solve_guard: int = SOLVE_GUARD_N
):
    configure_logging(config.verbosity)
    report = bound_report(
        config.n,
        config.r[0],
        with_construction=with_construction,
        precision=config.precision,
        solve_guard=solve_guard,
    )
    emit(bound_document(report), config)


def _sweep(config: RunConfig, n_values, solve_guard: int = SOLVE_GUARD_N):
    configure_logging(config.verbosity)
    rows = bound_sweep(n_values, config.r[0], config.precision, solve_guard)
    emit(SweepDocument(rows=rows), config)


def parse_argument(text: str, precision: int):
    """A rational such as ``"1/10"``, or ``"e"``."""
    if text.strip() == "e":
        return e_interval(precision + GUARD_BITS)
    return Fraction(text.strip())


def lambertw(
    x: str = typer.Argument(..., help="Nonnegative rational argument, or 'e'."),
    precision: int = typer.Option(64, "--precision", help="Bits of the enclosure."),
    fmt: str = typer.Option("text", "--format", help=_FORMAT_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Enclose the principal branch W(x) of Lambert's function."""
    with exit_codes():
        config = RunConfig(
            command="lambertw",
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        _lambertw(config, x)


def _lambertw(config: RunConfig, x: str):
    configure_logging(config.verbosity)
    w = lambert_w(parse_argument(x, config.precision), config.precision)
    lo, hi = w.format_endpoints()
    emit(LambertWDocument(x=x.strip(), precision=config.precision, lo=lo, hi=hi), config)
