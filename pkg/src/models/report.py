"""Run report types shared by the scenario runners and the report writer."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Tuple, Union

ParameterValue = Union[float, int, str]


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INFO = "INFO"


class CheckKind(Enum):
    """How a record's measured value is judged against its tolerance."""

    RELATIVE = "relative"  # |m - p| <= tol * |p|  (|m| <= tol when p == 0)
    ABSOLUTE = "absolute"  # |m - p| <= tol
    LOWER_BOUND = "lower_bound"  # m > tol
    ORDER_OF_MAGNITUDE = "order_of_magnitude"  # p / tol <= m <= p * tol
    INFO = "info"  # reported, never judged


def judge(
    check: CheckKind,
    predicted: Optional[float],
    measured: Optional[float],
    tolerance: Optional[float],
) -> Verdict:
    if check is CheckKind.INFO:
        return Verdict.INFO
    if measured is None or tolerance is None or not math.isfinite(measured):
        return Verdict.FAIL
    if check is CheckKind.LOWER_BOUND:
        return Verdict.PASS if measured > tolerance else Verdict.FAIL
    if predicted is None:
        return Verdict.FAIL
    if check is CheckKind.ABSOLUTE:
        ok = abs(measured - predicted) <= tolerance
    elif check is CheckKind.RELATIVE:
        scale = abs(predicted) if predicted != 0 else 1.0
        ok = abs(measured - predicted) <= tolerance * scale
    else:
        if predicted <= 0 or measured <= 0:
            ok = False
        else:
            ok = predicted / tolerance <= measured <= predicted * tolerance
    return Verdict.PASS if ok else Verdict.FAIL


@dataclass(frozen=True, slots=True)
class QuantityRecord:
    name: str
    predicted: Optional[float]
    measured: Optional[float]
    paper_value: Optional[float]
    tolerance: Optional[float]
    verdict: Verdict
    check: CheckKind = CheckKind.RELATIVE
    unit: str = ""
    note: str = ""

    @classmethod
    def judged(
        cls,
        name: str,
        predicted: Optional[float],
        measured: Optional[float],
        tolerance: Optional[float],
        check: CheckKind = CheckKind.RELATIVE,
        paper_value: Optional[float] = None,
        unit: str = "",
        note: str = "",
    ) -> "QuantityRecord":
        return cls(
            name=name,
            predicted=predicted,
            measured=measured,
            paper_value=paper_value,
            tolerance=tolerance,
            verdict=judge(check, predicted, measured, tolerance),
            check=check,
            unit=unit,
            note=note,
        )

    @classmethod
    def info(
        cls,
        name: str,
        measured: Optional[float],
        predicted: Optional[float] = None,
        paper_value: Optional[float] = None,
        unit: str = "",
        note: str = "",
    ) -> "QuantityRecord":
        return cls.judged(
            name, predicted, measured, None, CheckKind.INFO, paper_value, unit, note
        )


@dataclass(frozen=True, slots=True)
class RunReport:
    """Self-contained result of one scenario run; re-runnable from its echo."""

    scenario: str
    parameters: Mapping[str, ParameterValue]
    seed: int
    units: str
    records: Tuple[QuantityRecord, ...] = field(default_factory=tuple)
    version: str = ""
    elapsed_seconds: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", dict(sorted(self.parameters.items())))
        object.__setattr__(self, "records", tuple(self.records))

    @property
    def failed(self) -> Tuple[QuantityRecord, ...]:
        return tuple(r for r in self.records if r.verdict is Verdict.FAIL)

    @property
    def passed(self) -> bool:
        return not self.failed
