# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
"""Deterministic CSV, JSON and plain-text rendering of the export documents."""
import csv
import io
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel

from freeness_bounds.schemas import (
    BoundDocument,
    BoundRow,
    CheckOutcome,
    OutputFormat,
    SweepDocument,
    SweepRow,
    TableCell,
    TableDocument,
    VerifyDocument,
)

# documents whose CSV form is a list of nested rows
_ROWS = {
    TableDocument: ("cells", TableCell),
    BoundDocument: ("rows", BoundRow),
    SweepDocument: ("rows", SweepRow),
    VerifyDocument: ("outcomes", CheckOutcome),
}


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return ";".join(f"{k}={_cell(v)}" for k, v in value.items())
    if isinstance(value, list):
        return ";".join(_cell(v) for v in value)
    return str(value)


def _split(document: BaseModel) -> Tuple[Dict[str, Any], List[str], List[Dict[str, Any]]]:
    """Scalar header fields, row column names and rows of a document."""
    data = document.model_dump(mode="json")
    if type(document) not in _ROWS:
        return {}, list(data), [data]
    row_field, row_model = _ROWS[type(document)]
    rows = data.pop(row_field)
    columns = list(row_model.model_fields)
    header = {k: v for k, v in data.items() if not isinstance(v, (dict, list))}
    for key, value in data.items():
        if isinstance(value, dict):
            header.update({f"{key}.{k}": v for k, v in value.items()})
    return header, columns, rows


def to_json(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"


def to_csv(document: BaseModel) -> str:
    """Header row plus one row per entry; scalar document fields are left to JSON."""
    _, columns, rows = _split(document)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def to_text(document: BaseModel) -> str:
    header, columns, rows = _split(document)
    lines = [f"{key}: {_cell(value)}" for key, value in header.items()]
    table = [columns] + [[_cell(row.get(column)) for column in columns] for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    if lines:
        lines.append("")
    for line in table:
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(document: BaseModel, fmt: OutputFormat) -> str:
    if fmt == "json":
        return to_json(document)
    if fmt == "csv":
        return to_csv(document)
    return to_text(document)
