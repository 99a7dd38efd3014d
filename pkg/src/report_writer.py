"""
Report serialisation and whole-file atomic writes.

JSON output is the full report with sorted keys; CSV output is one row per
quantity record. Neither includes the run time unless asked, so two runs with
the same configuration and seed produce identical bytes.
"""

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .config_types import OutputFormat
from .errors import ReportWriteError, format_error_message
from .logging_config import get_logger
from .models import RunReport, dict_to_report, report_to_dict
from .scenarios.base import Series

logger = get_logger(__name__)

CSV_HEADER = ("name", "predicted", "measured", "paper_value", "tolerance", "verdict")


def _cell(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _json_bytes(payload: Any) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n").encode("utf-8")


def _csv_bytes(header: Sequence[str], rows: Sequence[Sequence[str]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().encode("utf-8")


def _record_rows(report: RunReport) -> List[List[str]]:
    return [
        [
            r.name,
            _cell(r.predicted),
            _cell(r.measured),
            _cell(r.paper_value),
            _cell(r.tolerance),
            r.verdict.value,
        ]
        for r in report.records
    ]


def emit_report(
    report: RunReport,
    format: Union[OutputFormat, str] = OutputFormat.JSON,
    include_timing: bool = False,
) -> bytes:
    """
    Serialise a report.

    Args:
        report: The report to serialise
        format: json (full report, stable key order) or csv (one row per record)
        include_timing: Add elapsed_seconds to JSON output

    Returns:
        UTF-8 bytes ending in a newline
    """
    output_format = OutputFormat(format)
    if output_format is OutputFormat.JSON:
        return _json_bytes(report_to_dict(report, include_timing=include_timing))
    return _csv_bytes(CSV_HEADER, _record_rows(report))


def emit_suite(
    reports: Sequence[RunReport],
    format: Union[OutputFormat, str] = OutputFormat.JSON,
    include_timing: bool = False,
) -> bytes:
    """Serialise several reports; the CSV form prefixes each row with its scenario."""
    output_format = OutputFormat(format)
    if output_format is OutputFormat.JSON:
        payload: Dict[str, Any] = {
            "reports": [report_to_dict(r, include_timing=include_timing) for r in reports],
            "failed": sum(len(r.failed) for r in reports),
        }
        return _json_bytes(payload)
    rows = [[report.scenario, *row] for report in reports for row in _record_rows(report)]
    return _csv_bytes(("scenario", *CSV_HEADER), rows)


def parse_report(data: Union[str, bytes]) -> RunReport:
    """Rebuild a RunReport from emit_report JSON output."""
    return dict_to_report(json.loads(data))


def write_atomic(path: Union[str, Path], data: bytes) -> Path:
    """
    Write bytes to path through a temporary file in the same directory.

    Raises:
        ReportWriteError: If the directory is missing or not writable
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    temp_name: Optional[str] = None
    try:
        with tempfile.NamedTemporaryFile(
            mode="wb", dir=directory, prefix=f".{target.name}.", suffix=".tmp", delete=False
        ) as handle:
            temp_name = handle.name
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(temp_name, target)
    except OSError as e:
        if temp_name is not None and os.path.exists(temp_name):
            os.unlink(temp_name)
        raise ReportWriteError(format_error_message("unwritable_path", path=target)) from e
    logger.debug("file_written", path=str(target), size=len(data))
    return target


def write_series(series: Sequence[Series], directory: Union[str, Path]) -> List[Path]:
    """Write each series as <directory>/<name>.csv; the directory is created if needed."""
    folder = Path(directory)
    try:
        folder.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportWriteError(format_error_message("unwritable_path", path=folder)) from e
    written = []
    for item in series:
        rows = [[repr(float(v)) for v in row] for row in item.rows]
        written.append(write_atomic(folder / f"{item.name}.csv", _csv_bytes(item.header, rows)))
    return written
