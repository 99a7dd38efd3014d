"""Conversion between RunReport and plain JSON-ready dictionaries."""

import math
from typing import Any, Dict, List, Mapping, Optional, TypedDict, Union

from .report import CheckKind, ParameterValue, QuantityRecord, RunReport, Verdict


JsonNumber = Union[float, str, None]


class QuantityRecordDict(TypedDict):
    name: str
    predicted: JsonNumber
    measured: JsonNumber
    paper_value: JsonNumber
    tolerance: JsonNumber
    verdict: str
    check: str
    unit: str
    note: str


class RunReportDict(TypedDict, total=False):
    scenario: str
    parameters: Dict[str, ParameterValue]
    seed: int
    units: str
    version: str
    records: List[QuantityRecordDict]
    elapsed_seconds: float


def _json_number(value: Optional[float]) -> JsonNumber:
    # JSON has no inf/nan; float() reads "inf", "-inf" and "nan" back
    if value is None:
        return None
    if not math.isfinite(value):
        return str(float(value))
    return float(value)


def record_to_dict(record: QuantityRecord) -> QuantityRecordDict:
    return {
        "name": record.name,
        "predicted": _json_number(record.predicted),
        "measured": _json_number(record.measured),
        "paper_value": _json_number(record.paper_value),
        "tolerance": _json_number(record.tolerance),
        "verdict": record.verdict.value,
        "check": record.check.value,
        "unit": record.unit,
        "note": record.note,
    }


def report_to_dict(report: RunReport, include_timing: bool = False) -> RunReportDict:
    """
    Convert a RunReport into a JSON-ready dictionary.

    elapsed_seconds is left out unless include_timing is set, so that two runs
    with the same configuration serialise to identical bytes.
    """
    result: RunReportDict = {
        "scenario": report.scenario,
        "parameters": dict(report.parameters),
        "seed": report.seed,
        "units": report.units,
        "version": report.version,
        "records": [record_to_dict(r) for r in report.records],
    }
    if include_timing:
        result["elapsed_seconds"] = report.elapsed_seconds
    return result


def _optional_float(value: Any) -> Optional[float]:
    return None if value is None else float(value)


def dict_to_record(data: Mapping[str, Any]) -> QuantityRecord:
    return QuantityRecord(
        name=str(data["name"]),
        predicted=_optional_float(data.get("predicted")),
        measured=_optional_float(data.get("measured")),
        paper_value=_optional_float(data.get("paper_value")),
        tolerance=_optional_float(data.get("tolerance")),
        verdict=Verdict(data["verdict"]),
        check=CheckKind(data.get("check", CheckKind.RELATIVE.value)),
        unit=str(data.get("unit", "")),
        note=str(data.get("note", "")),
    )


def dict_to_report(data: Mapping[str, Any]) -> RunReport:
    """
    Rebuild a RunReport from report_to_dict output (or parsed JSON).

    Reports serialised without timing come back with elapsed_seconds = 0.
    """
    records = data.get("records", [])
    return RunReport(
        scenario=str(data["scenario"]),
        parameters=dict(data.get("parameters", {})),
        seed=int(data["seed"]),
        units=str(data.get("units", "")),
        records=tuple(dict_to_record(r) for r in records),
        version=str(data.get("version", "")),
        elapsed_seconds=float(data.get("elapsed_seconds", 0.0)),
    )
