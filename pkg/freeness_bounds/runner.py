# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
import dataclasses
import logging
from typing import List, Optional

from freeness_bounds.errors import ChecksFailed, NoChecksRun, SuiteRunnerValidationError
from freeness_bounds.intervals import DEFAULT_PRECISION
from freeness_bounds.schemas import CheckOutcome
from freeness_bounds.suites import SUITES, CheckContext, SuiteLimits, collect_checks

logger = logging.getLogger(__name__)


class SuiteRunner:
    _RAISE_IMMEDIATELY = False

    def __init__(self, precision: int = DEFAULT_PRECISION):
        self._precision = precision
        self._limits = SuiteLimits()
        self._outcomes: List[CheckOutcome] = []

    def configure(
        self,
        *,
        precision: Optional[int] = None,
        limits: Optional[SuiteLimits] = None,
        raise_immediately: Optional[bool] = None,
    ):
        """

        :param precision: interval precision in bits handed to every check.
        :param limits: problem sizes the suites sweep over; shrink them for quick runs.
        :param raise_immediately: re-raise the first failing check instead of collecting
            failures until the end of the run.
        """
        if precision is not None:
            self._precision = precision
        if limits is not None:
            self._limits = limits
        if raise_immediately is not None:
            self._RAISE_IMMEDIATELY = raise_immediately

    def _validate_config(self):
        """Validate the configuration of the runner.

        Will raise SuiteRunnerValidationError if something is not right with the config.
        """
        errors = []
        if not isinstance(self._precision, int) or self._precision < 16:
            errors.append(f"precision should be an integer >= 16, not {self._precision!r}")
        if not isinstance(self._limits, SuiteLimits):
            errors.append(f"limits should be of type SuiteLimits, not: {type(self._limits)}")
        else:
            for field in dataclasses.fields(self._limits):
                value = getattr(self._limits, field.name)
                values = value if isinstance(value, tuple) else (value,)
                if field.name == "seed":
                    continue
                if not values or any(not isinstance(v, int) or v < 1 for v in values):
                    errors.append(f"limit {field.name} should be positive, not {value!r}")
            if self._limits.table_n_max < 2:
                errors.append("limit table_n_max should be at least 2")
        if errors:
            err = "\n".join(errors)
            raise SuiteRunnerValidationError(
                f"suite runner is misconfigured:\n{err}\n"
                f"please use the configure() API to fix the offending values."
            )

    @property
    def outcomes(self) -> List[CheckOutcome]:
        """Outcomes of the last run, in execution order."""
        return list(self._outcomes)

    def __repr__(self):
        return f"<SuiteRunner precision={self._precision} limits={self._limits}>"

    def run(self, suite: str) -> List[CheckOutcome]:
        """Run every check of ``suite``.

        Returns the outcomes when all checks pass; raises ChecksFailed otherwise.
        """
        self._validate_config()  # will raise if misconfigured
        logger.info("running suite %s with %r" % (suite, self))
        ctx = CheckContext(suite=suite, precision=self._precision, limits=self._limits)
        self._outcomes = []
        errors = []

        for fn in collect_checks(suite):
            try:
                detail = fn(ctx) or ""
            except Exception as e:
                if self._RAISE_IMMEDIATELY:
                    raise e
                errors.append((fn, e))
                self._outcomes.append(
                    CheckOutcome(suite=suite, check=fn.__name__, passed=False, detail=str(e))
                )
                continue
            logger.info("%s:%s passed: %s" % (suite, fn.__name__, detail))
            self._outcomes.append(
                CheckOutcome(suite=suite, check=fn.__name__, passed=True, detail=detail)
            )

        if errors:
            long_msg = "\n".join(f" - {suite}:{fn.__name__} raised {e!r}" for fn, e in errors)
            raise ChecksFailed(f"suite {suite} completed with {len(errors)} errors. \n" + long_msg)

        if not self._outcomes:
            msg = f"no checks gathered for suite {suite!r}; known suites are {', '.join(SUITES)}"
            logger.warning(msg)
            raise NoChecksRun(msg)
        return self.outcomes
