# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
from pathlib import Path
from typing import Optional

import typer

from freeness_bounds.cli.output import configure_logging, emit, exit_codes
from freeness_bounds.errors import ChecksFailed
from freeness_bounds.runner import SuiteRunner
from freeness_bounds.schemas import RunConfig, VerifyDocument
from freeness_bounds.suites import SUITES


def verify(
    suite: str = typer.Argument(..., help=f"Suite to run: one of {', '.join(SUITES)}."),
    precision: int = typer.Option(64, "--precision", help="Interval precision in bits."),
    fmt: str = typer.Option("text", "--format", help="Output format: csv, json or text."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to this file."),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True),
):
    """Run a verification suite and report every check."""
    with exit_codes():
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        config = RunConfig(
            command="verify",
            precision=precision,
            format=fmt,
            output=output,
            verbosity=verbose,
        )
        _verify(config, suite)


def _verify(config: RunConfig, suite: str, runner: Optional[SuiteRunner] = None):
    configure_logging(config.verbosity)
    runner = runner or SuiteRunner()
    runner.configure(precision=config.precision)
    try:
        runner.run(suite)
    except ChecksFailed:
        emit(VerifyDocument(suite=suite, passed=False, outcomes=runner.outcomes), config)
        raise
    emit(VerifyDocument(suite=suite, passed=True, outcomes=runner.outcomes), config)
