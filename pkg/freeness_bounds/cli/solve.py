# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
from pathlib import Path
from typing import Optional

import typer

from freeness_bounds.certified_reals import enclose
from freeness_bounds.cli.output import configure_logging, emit, exit_codes, int_list
from freeness_bounds.errors import SizeGuardError
from freeness_bounds.schemas import (
    CaseSummary,
    RunConfig,
    SolveDocument,
    TableDocument,
)
from freeness_bounds.solver import (
    SOLVE_GUARD_N,
    TABLE_MAX_N,
    SolveResult,
    build_table,
    solve_F,
    solve_G_sixfold,
)

_FORMAT_HELP = "Output format: csv, json or text."


def table(
    n_max: int = typer.Option(17, "--n-max", help="Largest n of the table (from n = 2)."),
    r: str = typer.Option("1,2", "--r", help="Comma separated r values, e.g. '1,2'."),
    precision: int = typer.Option(64, "--precision", help="Bits of the floor certification."),
    fmt: str = typer.Option("text", "--format", help=_FORMAT_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    allow_large: bool = typer.Option(
        False, "--allow-large", help=f"Lift the n_max <= {TABLE_MAX_N} guard."
    ),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Tabulate floor(F(n, r)) with exact values and maximizing chains."""
    with exit_codes():
        config = RunConfig(
            command="table",
            n_max=n_max,
            r=int_list(r),
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        _table(config, allow_large)


def _table(config: RunConfig, allow_large: bool = False):
    configure_logging(config.verbosity)
    if config.n_max > TABLE_MAX_N and not allow_large:
        raise SizeGuardError(
            f"--n-max {config.n_max} exceeds the guard {TABLE_MAX_N}; pass --allow-large"
        )
    emit(TableDocument(cells=build_table(config.n_max, config.r, config.precision)), config)


def solve_document(result: SolveResult, config: RunConfig, function: str) -> SolveDocument:
    lo, hi = enclose(result.value, config.precision).format_endpoints()
    return SolveDocument(
        function=function,
        n=config.n,
        r=config.r[0] if function == "F" else None,
        value=str(result.value),
        floor=result.floor,
        lo=lo,
        hi=hi,
        witness=result.witness.text(),
        stats=result.stats.as_dict(),
        cases=[
            CaseSummary(
                name=case.name,
                scored=case.scored,
                best="" if case.best is None else str(case.best),
                witness="" if case.witness is None else case.witness.text(),
            )
            for case in result.cases
        ],
    )


def solve_f(
    n: int = typer.Option(..., "--n", help="Dimension n."),
    r: int = typer.Option(1, "--r", help="Parameter r."),
    precision: int = typer.Option(64, "--precision", help="Bits of the reported enclosure."),
    fmt: str = typer.Option("text", "--format", help=_FORMAT_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    allow_large: bool = typer.Option(
        False, "--allow-large", help=f"Lift the n <= {SOLVE_GUARD_N} guard."
    ),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Compute F(n, r) exactly, with its certified floor and a maximizing chain."""
    with exit_codes():
        config = RunConfig(
            command="solve-f",
            n=n,
            r=[r],
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        _solve_f(config, allow_large)


def _solve_f(config: RunConfig, allow_large: bool = False):
    configure_logging(config.verbosity)
    if config.n > SOLVE_GUARD_N and not allow_large:
        raise SizeGuardError(f"--n {config.n} exceeds the guard {SOLVE_GUARD_N}")
    result = solve_F(config.n, config.r[0], config.precision)
    emit(solve_document(result, config, "F"), config)


def solve_g(
    n: int = typer.Option(6, "--n", help="Dimension n."),
    precision: int = typer.Option(64, "--precision", help="Bits of the reported enclosure."),
    fmt: str = typer.Option("text", "--format", help=_FORMAT_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Certified upper bound for G(n) from the sixfold case analysis."""
    with exit_codes():
        config = RunConfig(
            command="solve-g",
            n=n,
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        _solve_g(config)


def _solve_g(config: RunConfig):
    configure_logging(config.verbosity)
    emit(solve_document(solve_G_sixfold(config.n), config, "G"), config)
