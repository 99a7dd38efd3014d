"""
Monte Carlo of collapse hits on a macroscopic object with a displaced tail.

Every nucleon is hit at rate lambda, so hits on the object form a Poisson
process of rate N * lambda. A hit on the tail copy ejects the nucleon with
probability min(1, (d / d_c)^2), d_c = a^2 / w. Each ejection deposits
energy_per_decay MeV; power and dose follow from the ejection rate.
"""

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import constants

from .errors import StreamCapacityError, ValidationError, format_error_message
from .logging_config import get_logger
from .models import ConsistencyFlag, DecayReport, EventMode, MacroObject
from .models.macro import DEFAULT_RATE_PER_NUCLEON
from .random_streams import substream
from .tail_analytics import excitation_threshold

logger = get_logger(__name__)

MEV_IN_JOULES = 1.602176634e-13
J_PER_KG_PER_REM = 0.01  # quality factor 1 for beta radiation
STREAM_CAPACITY = 1e9
COUNT_CAPACITY = 1e18  # numpy's Poisson sampler is limited to lam < ~9.2e18
ORDER_OF_MAGNITUDE_FACTOR = 10.0

# Printed figures for a kilogram of tail matter
PRINTED_POWER_MEV_PER_S_PER_KG = 1e11
PRINTED_POWER_WATTS_PER_KG = 1e-8
PRINTED_DOSE_REM_PER_YEAR = 100.0
PRINTED_MEAN_LIFETIME_S = 1e16

# Printed first-hit times and the nucleon counts they imply at lambda = 1e-16 /s
PRINTED_FIRST_HIT_S = {1e27: 1e-11, 1e30: 1e-14, 1.0: PRINTED_MEAN_LIFETIME_S}

SAFE_DOSE_REM_PER_YEAR = 0.1
FATAL_DOSE_REM = 400.0


def first_collapse_time_expected(obj: MacroObject) -> float:
    """Mean waiting time for the first hit anywhere in the object, 1/(N lambda)."""
    return 1.0 / obj.collapse_rate


def printed_first_hit_time(obj: MacroObject) -> Optional[float]:
    """The printed first-hit figure matching this object's N, or None when none applies."""
    if not math.isclose(obj.rate_per_nucleon, DEFAULT_RATE_PER_NUCLEON, rel_tol=1e-9):
        return None
    for n_nucleons, printed in PRINTED_FIRST_HIT_S.items():
        if math.isclose(obj.n_nucleons, n_nucleons, rel_tol=1e-9):
            return printed
    return None


def _check_duration(duration: float) -> None:
    if not (duration >= 0 and np.isfinite(duration)):
        raise ValidationError(f"duration must be finite and non-negative (got {duration})")


def collapse_event_stream(
    obj: MacroObject, duration: float, rng: np.random.Generator
) -> np.ndarray:
    """Sorted hit times in [0, duration): Poisson count, then uniform order statistics."""
    _check_duration(duration)
    expected = obj.collapse_rate * duration
    if expected > STREAM_CAPACITY:
        raise StreamCapacityError(
            format_error_message("stream_guard", expected=expected, limit=STREAM_CAPACITY)
        )
    if duration == 0:
        return np.empty(0)
    count = rng.poisson(expected)
    return np.sort(rng.uniform(0.0, duration, size=count))


def ejection_probability(d: float, d_crit: float) -> float:
    """min(1, (d / d_crit)^2)."""
    if d < 0:
        raise ValidationError(f"separation must be non-negative (got {d})")
    if not d_crit > 0:
        raise ValidationError(f"critical distance must be positive (got {d_crit})")
    return min(1.0, (d / d_crit) ** 2)


def dose_rate(power_watts_per_kg: float, absorbed_fraction: float = 1.0) -> float:
    """Absorbed dose in rem per year for a steady specific power."""
    if not 0 <= absorbed_fraction <= 1:
        raise ValidationError(
            f"absorbed_fraction must lie in [0, 1] (got {absorbed_fraction})"
        )
    if power_watts_per_kg < 0:
        raise ValidationError(f"power must be non-negative (got {power_watts_per_kg})")
    return power_watts_per_kg * absorbed_fraction * constants.year / J_PER_KG_PER_REM


def dose_category(dose_rem_per_year: float) -> str:
    """Where a yearly dose sits against the safe limit and the fatal dose."""
    if dose_rem_per_year >= FATAL_DOSE_REM:
        return "fatal"
    if dose_rem_per_year > SAFE_DOSE_REM_PER_YEAR:
        return "above-safe-limit"
    return "safe"


def _count_events(
    obj: MacroObject,
    duration: float,
    probability: float,
    rng: Optional[np.random.Generator],
    mode: EventMode,
) -> Tuple[float, float]:
    expected = obj.collapse_rate * duration
    if mode is EventMode.EXPECTED:
        return expected, expected * probability
    if rng is None:
        raise ValidationError(f"{mode.value} mode needs a random stream")
    if mode is EventMode.STREAM:
        collapses = int(collapse_event_stream(obj, duration, rng).size)
    else:
        if expected > COUNT_CAPACITY:
            raise StreamCapacityError(
                format_error_message("stream_guard", expected=expected, limit=COUNT_CAPACITY)
            )
        collapses = int(rng.poisson(expected))
    return collapses, int(rng.binomial(collapses, probability))


def _flag(label: str, printed: float, computed: float, note: str = "") -> ConsistencyFlag:
    ratio = computed / printed
    consistent = 1.0 / ORDER_OF_MAGNITUDE_FACTOR <= ratio <= ORDER_OF_MAGNITUDE_FACTOR
    return ConsistencyFlag(
        label=label,
        paper_value=printed,
        computed_value=computed,
        ratio=ratio,
        verdict="consistent" if consistent else "inconsistent",
        note=note,
    )


def consistency_flags(
    report: DecayReport, obj: MacroObject, absorbed_fraction: float = 1.0
) -> Tuple[ConsistencyFlag, ...]:
    """Printed per-kilogram figures next to the values this run recomputes."""
    power_per_kg = report.power_mev_per_s / obj.mass
    watts_per_kg = report.power_watts / obj.mass
    printed_watts_in_mev = PRINTED_POWER_WATTS_PER_KG / MEV_IN_JOULES
    return (
        _flag("power_mev_per_s_per_kg", PRINTED_POWER_MEV_PER_S_PER_KG, power_per_kg),
        _flag(
            "power_watts_per_kg",
            PRINTED_POWER_WATTS_PER_KG,
            watts_per_kg,
            note=(
                f"printed watts equal {printed_watts_in_mev:.3g} MeV/s per kg, "
                f"i.e. about 1 eV rather than 1 MeV per decay"
            ),
        ),
        _flag(
            "dose_from_computed_power",
            PRINTED_DOSE_REM_PER_YEAR,
            report.dose_rem_per_year,
        ),
        _flag(
            "dose_from_printed_power",
            PRINTED_DOSE_REM_PER_YEAR,
            dose_rate(PRINTED_POWER_WATTS_PER_KG, absorbed_fraction),
            note="dose follows the printed watt figure, not the MeV/s figure",
        ),
        _flag("mean_lifetime", PRINTED_MEAN_LIFETIME_S, 1.0 / obj.rate_per_nucleon),
    )


def simulate_decay(
    obj: MacroObject,
    duration: float,
    rng: Optional[np.random.Generator],
    mode: EventMode = EventMode.STREAM,
    absorbed_fraction: float = 1.0,
) -> DecayReport:
    """
    Count hits and ejections over one window and convert them to power and dose.

    STREAM materialises every hit time, COUNT draws the Poisson count directly
    and EXPECTED uses expectation values (rng may then be None).
    """
    _check_duration(duration)
    if duration == 0:
        raise ValidationError("duration must be positive for a decay simulation")
    critical = excitation_threshold(obj.nucleon_width, obj.collapse_width)
    probability = ejection_probability(obj.separation, critical)
    collapses, ejections = _count_events(obj, duration, probability, rng, mode)

    ejection_rate = ejections / duration
    power_mev = ejection_rate * obj.energy_per_decay
    power_watts = power_mev * MEV_IN_JOULES
    expected_rate = obj.collapse_rate * probability
    report = DecayReport(
        duration=duration,
        n_collapses=collapses,
        n_ejections=ejections,
        ejection_rate=ejection_rate,
        power_mev_per_s=power_mev,
        power_watts=power_watts,
        dose_rem_per_year=dose_rate(power_watts / obj.mass, absorbed_fraction),
        expected_ejection_rate=expected_rate,
        expected_power_mev_per_s=expected_rate * obj.energy_per_decay,
        ejection_probability=probability,
        critical_distance=critical,
        mode=mode,
    )
    logger.debug(
        "decay_simulated",
        mode=mode.value,
        collapses=collapses,
        ejections=ejections,
        probability=probability,
    )
    return replace(
        report, paper_consistency_flags=consistency_flags(report, obj, absorbed_fraction)
    )


def simulate_ensemble(
    obj: MacroObject,
    duration: float,
    seed: int,
    repetitions: int,
    workers: int = 1,
    mode: EventMode = EventMode.STREAM,
    absorbed_fraction: float = 1.0,
) -> Tuple[DecayReport, ...]:
    """
    Independent repetitions on sub-streams derived from (seed, index), returned
    in repetition order whatever the number of workers.
    """
    if repetitions < 1:
        raise ValidationError(f"repetitions must be >= 1 (got {repetitions})")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1 (got {workers})")

    def run_one(index: int) -> DecayReport:
        return simulate_decay(
            obj, duration, substream(seed, index), mode, absorbed_fraction
        )

    if workers == 1:
        return tuple(run_one(i) for i in range(repetitions))

    results: Dict[int, DecayReport] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {executor.submit(run_one, i): i for i in range(repetitions)}
        for future in as_completed(future_to_index):
            results[future_to_index[future]] = future.result()
    ordered: List[DecayReport] = [results[i] for i in range(repetitions)]
    return tuple(ordered)
