"""
Writers for scan records and verification reports
CSV uses 17 significant digits; JSON uses Python's shortest round-trip repr, so both parse to the same doubles
"""

import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from app.core.models import ScanRecord, VerificationReport
from app.utils import format_human, format_machine


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


SCAN_FIELDS = [
    "omega", "tau_re", "tau_im", "m_re", "m_im", "m_abs2", "near_resonance", "continuation_depth",
]
# trailing CSV/table columns behind --diagnostics; JSON always carries them
DIAGNOSTIC_FIELDS = ["near_threshold", "error"]


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_machine(value)
    if value is None:
        return ""
    return str(value)


def _table_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format_human(value)
    if value is None:
        return "--"
    return str(value)


def rows_to_csv(rows: Sequence[Dict[str, Any]], fields: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row.get(f)) for f in fields])
    return buffer.getvalue()


def rows_to_table(rows: Sequence[Dict[str, Any]], fields: List[str]) -> str:
    """Space-aligned columns for the terminal"""
    cells = [fields] + [[_table_cell(row.get(f)) for f in fields] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(fields))]
    return "\n".join(
        "  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip() for line in cells
    ) + "\n"


def render_records(
    records: Iterable[ScanRecord], fmt: OutputFormat, single: bool = False, diagnostics: bool = False
) -> str:
    """
    Render scan records

    Args:
        records: Records in emission order
        fmt: csv, json or table
        single: Emit a JSON object instead of a one-element array
        diagnostics: Append near_threshold and error columns to csv and table output

    Returns:
        Text ending in a newline
    """
    rows = [r.model_dump() for r in records]
    fields = SCAN_FIELDS + DIAGNOSTIC_FIELDS if diagnostics else SCAN_FIELDS
    if fmt == OutputFormat.CSV:
        return rows_to_csv(rows, fields)
    if fmt == OutputFormat.TABLE:
        return rows_to_table(rows, fields)
    payload = rows[0] if single and len(rows) == 1 else rows
    return json.dumps(payload, indent=2) + "\n"


def render_model(model: BaseModel, fmt: OutputFormat) -> str:
    """Render any flat result model (StarkShift, CrossSection, ...)"""
    data = model.model_dump(mode="json")
    flat = {k: v for k, v in data.items() if not isinstance(v, dict)}
    if fmt == OutputFormat.JSON:
        return json.dumps(data, indent=2) + "\n"
    fields = list(flat.keys())
    if fmt == OutputFormat.CSV:
        return rows_to_csv([flat], fields)
    return rows_to_table([flat], fields)


def render_dicts(rows: Sequence[Dict[str, Any]], fmt: OutputFormat) -> str:
    """Render a list of flat dicts sharing the first row's keys"""
    if fmt == OutputFormat.JSON:
        return json.dumps(list(rows), indent=2) + "\n"
    fields = list(rows[0].keys()) if rows else []
    if fmt == OutputFormat.CSV:
        return rows_to_csv(rows, fields)
    return rows_to_table(rows, fields)


VERIFY_FIELDS = [
    "omega", "quantity", "printed", "comparison", "erratum", "computed", "delta", "tolerance", "status",
]


def report_rows(report: VerificationReport) -> List[Dict[str, Any]]:
    rows = []
    for check in report.checks:
        if check.row.skipped:
            status = "skipped"
        elif check.row.erratum is not None:
            status = "erratum" if check.passed else "FAIL (erratum)"
        else:
            status = "pass" if check.passed else "FAIL"
        rows.append({
            "omega": check.row.omega,
            "quantity": check.row.quantity,
            "printed": check.row.printed,
            "comparison": check.row.comparison,
            "erratum": check.row.erratum,
            "computed": check.computed,
            "delta": check.delta,
            "tolerance": check.tolerance,
            "status": status if not check.error else f"{status}: {check.error}",
        })
    return rows


def render_report(report: VerificationReport, fmt: OutputFormat) -> str:
    """Per-row deltas followed by a one-line summary (the summary is part of the JSON object)"""
    rows = report_rows(report)
    checked = sum(1 for c in report.checks if not c.row.skipped)
    summary = f"{report.table.value}: {checked - len(report.failures)}/{checked} rows pass"
    errata = sum(1 for c in report.checks if c.row.erratum is not None)
    if errata:
        summary += f" ({errata} against recomputed errata)"
    if fmt == OutputFormat.JSON:
        return json.dumps({"table": report.table.value, "passed": report.passed, "summary": summary, "rows": rows},
                          indent=2) + "\n"
    if fmt == OutputFormat.CSV:
        return rows_to_csv(rows, VERIFY_FIELDS)
    return rows_to_table(rows, VERIFY_FIELDS) + summary + "\n"


def write_output(text: str, output: Optional[str | Path] = None) -> Optional[Path]:
    """Write to a file when a path is given; return the path or None for stdout"""
    if output is None:
        return None
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
