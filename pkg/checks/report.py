"""
CSV reports. Rows are sorted by scenario id and floats are written with 17
significant digits, so the same config always gives the same bytes.
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import Iterable, List, Literal, Union

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

COLUMNS = ("scenario", "check", "lhs", "rhs", "residual", "tolerance", "verdict", "detail")


class ReportRow(BaseModel):
    scenario: str = Field(..., description="Scenario id")
    check: str = Field(..., description="Check name")
    position: int = Field(0, description="Index of the check in the scenario's list")
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    verdict: Literal["pass", "fail", "flagged"]
    detail: str = ""
    wall_time: float = Field(0.0, description="Seconds spent; kept out of the CSV")


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def render_csv(rows: Iterable[ReportRow]) -> str:
    """The report as CSV text with a header row."""
    ordered = sorted(rows, key=lambda r: (r.scenario, r.position))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in ordered:
        writer.writerow(
            [
                row.scenario,
                row.check,
                format_float(row.lhs),
                format_float(row.rhs),
                format_float(row.residual),
                format_float(row.tolerance),
                row.verdict,
                row.detail,
            ]
        )
    return buffer.getvalue()


def write_report(rows: Iterable[ReportRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = list(rows)
    path.write_text(render_csv(rows), encoding="utf-8")
    logger.info(f"wrote {len(rows)} row(s) to {path}")
    return path


def read_report(path: Union[str, Path]) -> List[dict]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def all_passed(rows: Iterable[ReportRow]) -> bool:
    """Flagged rows are bounds, not failures."""
    return all(row.verdict != "fail" for row in rows)
