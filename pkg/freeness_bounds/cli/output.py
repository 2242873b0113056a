# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Shared plumbing of the CLI commands: config, logging, exit codes and output."""
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import BaseModel

from freeness_bounds.export import render
from freeness_bounds.schemas import RunConfig

EXIT_OK = 0
EXIT_CERTIFICATION = 1
EXIT_USAGE = 2

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

logger = logging.getLogger(__name__)


def int_list(text: str) -> List[int]:
    """Parse ``"1,2"`` or a range ``"2..17"`` into a list of integers."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(item) for item in text.split(",") if item.strip()]


def configure_logging(verbosity: int):
    level = _LEVELS[min(verbosity, len(_LEVELS) - 1)]
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


@contextmanager
def exit_codes():
    """Map domain and usage errors to exit code 2, certification failures to exit code 1."""
    try:
        yield
    except typer.Exit:
        raise
    except ValueError as e:
        # DomainError, SizeGuardError, InvalidChainError and pydantic's ValidationError
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    except RuntimeError as e:
        # CertificationError, ChecksFailed, NoChecksRun, ConstructionInfeasibleError
        typer.echo(f"failed: {e}", err=True)
        raise typer.Exit(EXIT_CERTIFICATION)


def emit(document: BaseModel, config: RunConfig):
    """Render ``document`` in the configured format, to the output file or stdout."""
    text = render(document, config.format)
    output: Optional[Path] = config.output
    if output is None:
        typer.echo(text, nl=False)
        return
    output.write_text(text)
    logger.info("wrote %s output to %s" % (config.format, output))
