from .converters import dict_to_report, report_to_dict
from .grid import Grid1D, Region
from .kernel import CollapseKernel, CollapseOutcome, KernelKind
from .macro import ConsistencyFlag, DecayReport, EventMode, MacroObject
from .predictions import (
    CompoundSpec,
    KickPrediction,
    SweepPoint,
    TailMeasurement,
    TwoPeakPrediction,
)
from .report import CheckKind, QuantityRecord, RunReport, Verdict
from .wave import GaussianPeak, WaveFunction

__all__ = [
    "CheckKind",
    "CollapseKernel",
    "CollapseOutcome",
    "CompoundSpec",
    "ConsistencyFlag",
    "DecayReport",
    "EventMode",
    "GaussianPeak",
    "Grid1D",
    "KernelKind",
    "KickPrediction",
    "MacroObject",
    "QuantityRecord",
    "Region",
    "RunReport",
    "SweepPoint",
    "TailMeasurement",
    "TwoPeakPrediction",
    "Verdict",
    "WaveFunction",
    "dict_to_report",
    "report_to_dict",
]
