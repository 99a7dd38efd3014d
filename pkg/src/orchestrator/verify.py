"""
Built-in reproduction suite run by `grwtails verify`.

Every case is an ordinary scenario file (so any case can be re-run on its own
with `grwtails run`), plus one report built from the two-peak sweep. All cases
share the suite seed, which makes two suite runs with the same seed produce
identical reports.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .. import __version__
from ..config.loader import parse_config
from ..logging_config import get_logger
from ..models import CheckKind, QuantityRecord, RunReport, SweepPoint
from ..progress import MultiStepProgress
from ..tail_analytics import SWEEP_SAMPLES_PER_WIDTH, sweep_two_peak
from . import ScenarioOrchestrator, scenario_registry
from .init_scenarios import initialize_scenarios

logger = get_logger(__name__)

DEFAULT_VERIFY_SEED = 20240611
SWEEP_COLLAPSE_WIDTH = 10.0
SWEEP_DISPLACEMENT_TOLERANCE = 5e-3
SWEEP_WIDTH_TOLERANCE = 1e-2
SWEEP_SUPPRESSION_TOLERANCE = 1e-2


@dataclass(frozen=True)
class VerifyCase:
    label: str
    text: str

    def render(self, seed: int) -> str:
        return f"seed = {seed}\n{self.text}"


VERIFY_CASES: Tuple[VerifyCase, ...] = (
    VerifyCase(
        "two-peak collapse, w = 1, a = 10, x0 = 5",
        "scenario = two-peak-collapse\nunits = natural\nw = 1\na = 10\nx0 = 5\n",
    ),
    VerifyCase(
        "kick toward a near hit",
        "scenario = kick-excitation\nunits = natural\nw = 1\na = 10\nd = 1\n",
    ),
    VerifyCase(
        "kick toward a hit on the other side",
        "scenario = kick-excitation\nunits = natural\nw = 1\na = 10\nd = -3\n",
    ),
    VerifyCase(
        "1 kg cat, saturated ejection",
        "scenario = cat-decay\nmass = 1\nd = 2\n",
    ),
    VerifyCase(
        "1e30 nucleons, first hit within 1e-14 s",
        "scenario = cat-decay\nmass = 1\nn_nucleons = 1e30\nd = 2\nduration = 1e-10\n",
    ),
    VerifyCase(
        "1e28 nucleons, 100 windows of 1 ns",
        "scenario = cat-decay\nmass = 10\nd = 2\nduration = 1e-9\nrepetitions = 100\n",
    ),
    VerifyCase(
        "1 kg cat at d = d_c / 100",
        "scenario = cat-decay\nmass = 1\nd = 0.01\nduration = 1e-5\nrepetitions = 20\n",
    ),
    VerifyCase(
        "Gaussian against compact kernel, tail at 20a",
        "scenario = kernel-compare\nunits = natural\nw = 1\na = 10\n",
    ),
    VerifyCase(
        "collapse-centre sampling, 1e5 draws",
        "scenario = sample-centers\nunits = natural\nw = 1\na = 10\n",
    ),
    VerifyCase(
        "free spreading and truncated packets",
        "scenario = free-spreading\nunits = natural\nw = 1\n",
    ),
)


def _case_label(point: SweepPoint) -> str:
    return f"w/a={point.w / point.a:g}, x0/a={point.x0 / point.a:g}"


def sweep_records(points: Sequence[SweepPoint]) -> Tuple[QuantityRecord, ...]:
    records: List[QuantityRecord] = []
    for point in points:
        label = _case_label(point)
        prediction, measurement = point.prediction, point.measurement
        if prediction.x0_prime == 0:
            displacement = QuantityRecord.judged(
                f"tail displacement ({label})",
                0.0,
                measurement.x0_measured,
                measurement.spacing,
                CheckKind.ABSOLUTE,
            )
        else:
            displacement = QuantityRecord.judged(
                f"tail displacement ({label})",
                prediction.x0_prime,
                measurement.x0_measured,
                SWEEP_DISPLACEMENT_TOLERANCE,
            )
        records.append(displacement)
        records.append(
            QuantityRecord.judged(
                f"post-collapse width ({label})",
                prediction.w_prime,
                measurement.w_prime_measured,
                SWEEP_WIDTH_TOLERANCE,
            )
        )
        records.append(
            QuantityRecord.judged(
                f"suppression ({label})",
                prediction.suppression,
                measurement.suppression_measured,
                SWEEP_SUPPRESSION_TOLERANCE,
            )
        )
    return tuple(records)


def run_sweep(seed: int) -> RunReport:
    """The two-peak sweep as a report; deterministic, the seed is only echoed."""
    points = sweep_two_peak(a=SWEEP_COLLAPSE_WIDTH)
    return RunReport(
        scenario="two-peak-sweep",
        parameters={"a": SWEEP_COLLAPSE_WIDTH, "samples_per_width": SWEEP_SAMPLES_PER_WIDTH},
        seed=seed,
        units="natural",
        records=sweep_records(points),
        version=__version__,
    )


def run_verify(
    seed: int = DEFAULT_VERIFY_SEED,
    workers: Optional[int] = None,
    progress: Optional[MultiStepProgress] = None,
) -> Tuple[RunReport, ...]:
    """
    Run the whole suite.

    Args:
        seed: Seed shared by every case
        workers: Worker threads for repetition ensembles
        progress: Optional step reporter, advanced once per case

    Returns:
        One report per case, sweep first
    """
    initialize_scenarios()
    orchestrator = ScenarioOrchestrator(scenario_registry)

    if progress:
        progress.next_step()
    reports = [run_sweep(seed)]
    if progress:
        progress.step_failed(len(reports[0].failed))
    for case in VERIFY_CASES:
        if progress:
            progress.next_step()
        config = parse_config(case.render(seed), workers=workers)
        reports.append(orchestrator.execute(config).report)
        if progress:
            progress.step_failed(len(reports[-1].failed))
        logger.info("verify_case_finished", case=case.label, failed=len(reports[-1].failed))
    if progress:
        progress.complete()
    return tuple(reports)


def verify_step_labels() -> List[str]:
    return ["two-peak sweep"] + [case.label for case in VERIFY_CASES]
