# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Export models for tables, bound reports, solves and verification runs.

Every JSON document carries a ``schema_version`` field; CSV exports use the field order
of the row models as their header. Interval endpoints are decimal strings rounded
outward, exact values are radical serializations such as ``"2 + 1 * 2^(1/2)"``.
"""
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from freeness_bounds.intervals import DEFAULT_PRECISION

SCHEMA_VERSION = "1"

Verdict = Literal["true", "false", "undecided", ""]
OutputFormat = Literal["csv", "json", "text"]
Command = Literal["table", "solve-f", "solve-g", "bounds", "verify", "lambertw"]


class TableCell(BaseModel):
    """One ``(n, r)`` entry of the table of ``floor(F(n, r))``."""

    n: int
    r: int
    floor_F: int
    exact_value: str
    witness_b: str
    witness_d: str


class TableDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    cells: List[TableCell]


class BoundRow(BaseModel):
    """A named bound on ``F(n, r)`` with its verdict against the computed value.

    ``dominates_F`` is ``"true"`` when the bound sits on its correct side of F (strictly
    above for upper bounds, at or below for lower bounds), ``"undecided"`` when the
    enclosures still overlap after escalation, and empty when F was not computed.
    """

    n: int
    r: int
    bound_name: str
    lo: str
    hi: str
    exact_part: str = ""
    dominates_F: Verdict = ""


class ConstructionSummary(BaseModel):
    n: int
    chain: str
    valid: bool
    violations: List[str] = []
    value: str = ""
    target_lo: str
    target_hi: str
    holds: Verdict = ""
    gap_two: bool
    lemma_conditions: bool
    b1_within_tenth: bool
    in_proven_range: bool
    lemma_threshold: int
    proof_threshold: int


class BoundDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n: int
    r: int
    F_floor: Optional[int] = None
    F_value: Optional[str] = None
    rows: List[BoundRow]
    construction: Optional[ConstructionSummary] = None


class SweepRow(BaseModel):
    """Plot-ready row: midpoints of every bound at ``x = n``; ``F`` empty beyond the guard."""

    n: int
    r: int
    young_sum: str
    enlogn_sum: str
    loglog_thm: str
    easy_lower: str
    F: str = ""


class SweepDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    rows: List[SweepRow]


class CaseSummary(BaseModel):
    name: str
    scored: int
    best: str = ""
    witness: str = ""


class SolveDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    function: Literal["F", "G"]
    n: int
    r: Optional[int] = None
    value: str
    floor: int
    lo: str
    hi: str
    witness: str
    stats: Dict[str, int]
    cases: List[CaseSummary] = []


class LambertWDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    x: str
    precision: int
    lo: str
    hi: str


class CheckOutcome(BaseModel):
    suite: str
    check: str
    passed: bool
    detail: str = ""


class VerifyDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    suite: str
    passed: bool
    outcomes: List[CheckOutcome]


class RunConfig(BaseModel):
    """Validated command-line configuration."""

    command: Command
    n: Optional[int] = None
    n_max: Optional[int] = None
    r: List[int] = [1]
    precision: int = Field(DEFAULT_PRECISION, ge=16)
    format: OutputFormat = "text"
    output: Optional[Path] = None
    verbosity: int = Field(0, ge=0)

    @field_validator("r")
    @classmethod
    def _positive_r(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one r value is required")
        if any(r < 1 for r in value):
            raise ValueError(f"r values must be positive, got {value}")
        return value
