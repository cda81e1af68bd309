"""Machine-readable reports with deterministic serialization.

JSON keys are sorted and floats are rendered with repr (shortest round-trip
form), so identical inputs produce byte-identical reports; the timestamp is
the only non-reproducible field and is omitted in compare mode.  CSV uses a
'.' decimal separator and '\n' line endings unconditionally.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path


@dataclass
class Report:
    command: str
    seed: int | None = None
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    created: str | None = None


def build_report(
    command: str,
    seed: int | None,
    results: dict,
    checks: list | None = None,
    timestamp: bool = True,
) -> Report:
    created = datetime.now(timezone.utc).isoformat() if timestamp else None
    return Report(
        command=command,
        seed=seed,
        results=results,
        checks=checks or [],
        created=created,
    )


def report_json(report: Report) -> str:
    payload = {
        "command": report.command,
        "seed": report.seed,
        "results": report.results,
    }
    if report.checks:
        payload["checks"] = report.checks
    if report.created is not None:
        payload["created"] = report.created
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_cell(cell) for cell in row) + "\n")
    return buf.getvalue()


def write_text(text: str, out: str | None) -> None:
    if out is None:
        print(text, end="")
    else:
        Path(out).write_text(text)
