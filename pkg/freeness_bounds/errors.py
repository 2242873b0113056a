# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
class DomainError(ValueError):
    """Raised if an argument lies outside the domain of an operation."""


class InvalidChainError(ValueError):
    """Raised if a chain or sixfold profile is invalid where a valid one is required."""

    def __init__(self, msg: str, violations=()):
        super().__init__(msg)
        self.violations = list(violations)


class SizeGuardError(ValueError):
    """Raised if a problem size exceeds the guard of an exhaustive computation."""


class CertificationError(RuntimeError):
    """Raised if a certified comparison or witness check cannot be completed."""


class ConstructionInfeasibleError(RuntimeError):
    """Raised if the lower-bound construction does not produce a valid chain."""


class InvalidCheckError(RuntimeError):
    """Raised if a verification check function is invalid."""


class ChecksFailed(RuntimeError):
    """Raised if a verification suite completed with failing checks."""


class NoChecksRun(RuntimeError):
    """Raised if no verification check was collected during a run() call."""


class SuiteRunnerValidationError(ValueError):
    """Raised if the SuiteRunner configuration is incorrect or incomplete."""
