from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config_types import Scenario, ScenarioConfig, Units
from ..logging_config import get_logger
from ..macro_mc import (
    MEV_IN_JOULES,
    PRINTED_DOSE_REM_PER_YEAR,
    PRINTED_POWER_MEV_PER_S_PER_KG,
    PRINTED_POWER_WATTS_PER_KG,
    STREAM_CAPACITY,
    collapse_event_stream,
    dose_category,
    dose_rate,
    first_collapse_time_expected,
    printed_first_hit_time,
    simulate_decay,
    simulate_ensemble,
)
from ..models import CheckKind, DecayReport, EventMode, MacroObject, QuantityRecord
from ..models.macro import NUCLEONS_PER_KG
from ..random_streams import substream
from .base import ScenarioDefinition, ScenarioResult, ScenarioRunner, event_series

logger = get_logger(__name__)

SIGMA_BAND = 3.0
EVENT_SERIES_REPETITION = 0


class CatDecayScenario(ScenarioRunner):
    """A kilogram-scale tail: hit rate, ejections, emitted power and dose."""

    definition = ScenarioDefinition(
        scenario=Scenario.CAT_DECAY,
        summary="collapse hits, ejections, power and dose for a displaced macroscopic tail",
        required_parameters=("mass", "d"),
        defaults={"w": 1e-14, "duration": 1e-8, "repetitions": 20},
        optional_parameters=(
            "a",
            "lambda",
            "energy_mev",
            "absorbed_fraction",
            "n_nucleons",
        ),
        fraction_parameters=frozenset({"absorbed_fraction"}),
        integer_parameters=frozenset({"repetitions"}),
        units=(Units.SI,),
    )

    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        resolved = dict(parameters)
        resolved.setdefault("n_nucleons", parameters["mass"] * NUCLEONS_PER_KG)
        return resolved

    @staticmethod
    def macro_object(config: ScenarioConfig) -> MacroObject:
        return MacroObject(
            n_nucleons=config.param("n_nucleons"),
            mass=config.param("mass"),
            separation=config.param("d"),
            rate_per_nucleon=config.param("lambda"),
            nucleon_width=config.param("w"),
            energy_per_decay=config.param("energy_mev"),
            collapse_width=config.param("a"),
        )

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        obj = self.macro_object(config)
        duration = config.param("duration")
        repetitions = config.int_param("repetitions")
        absorbed = config.param("absorbed_fraction")
        mode = (
            EventMode.STREAM
            if obj.collapse_rate * duration <= STREAM_CAPACITY
            else EventMode.COUNT
        )
        reports = simulate_ensemble(
            obj, duration, config.seed, repetitions, config.workers, mode, absorbed
        )
        times: Optional[np.ndarray] = None
        if mode is EventMode.STREAM:
            # same sub-stream as repetition 0, so these are that repetition's hits
            times = collapse_event_stream(
                obj, duration, substream(config.seed, EVENT_SERIES_REPETITION)
            )

        records = self._records(obj, duration, reports, absorbed, times)
        logger.info(
            "cat_decay_finished",
            mode=mode.value,
            repetitions=repetitions,
            collapses=sum(r.n_collapses for r in reports),
        )
        return ScenarioResult(
            records=tuple(records), series=event_series("cat-decay_events", times)
        )

    @staticmethod
    def _records(
        obj: MacroObject,
        duration: float,
        reports: Sequence[DecayReport],
        absorbed: float,
        times: Optional[np.ndarray],
    ) -> List[QuantityRecord]:
        window = duration * len(reports)
        collapses = float(sum(r.n_collapses for r in reports))
        ejections = float(sum(r.n_ejections for r in reports))
        expected_collapses = obj.collapse_rate * window
        first = reports[0]
        probability = first.ejection_probability
        expected_ejections = expected_collapses * probability
        # printed power figures assume a saturated tail of ordinary matter
        printed_power = (
            PRINTED_POWER_MEV_PER_S_PER_KG * obj.mass
            if probability == 1.0
            and np.isclose(obj.n_nucleons, obj.mass * NUCLEONS_PER_KG, rtol=1e-9)
            else None
        )

        def mc_tolerance(expected_count: float) -> float:
            return SIGMA_BAND / np.sqrt(expected_count) if expected_count > 0 else 0.0

        ejection_tol = mc_tolerance(expected_ejections)
        mean_power = ejections / window * obj.energy_per_decay
        expected_power = first.expected_power_mev_per_s
        expected_watts = expected_power * MEV_IN_JOULES
        records = [
            QuantityRecord.info(
                "first collapse time",
                float(times[0]) if times is not None and times.size else None,
                predicted=first_collapse_time_expected(obj),
                paper_value=printed_first_hit_time(obj),
                unit="s",
                note="expected 1/(N lambda); measured is the first hit of repetition 0",
            ),
            QuantityRecord.judged(
                "collapse rate",
                obj.collapse_rate,
                collapses / window,
                mc_tolerance(expected_collapses),
                unit="1/s",
            ),
        ]
        if collapses > 0:
            binomial_sd = np.sqrt(probability * (1.0 - probability) / collapses)
            records.append(
                QuantityRecord.judged(
                    "ejection probability",
                    probability,
                    ejections / collapses,
                    SIGMA_BAND * binomial_sd,
                    CheckKind.ABSOLUTE,
                    note=f"min(1, (d/d_c)^2) with d_c = {first.critical_distance:.3g} m",
                )
            )
        records.extend(
            [
                QuantityRecord.judged(
                    "ejection rate",
                    first.expected_ejection_rate,
                    ejections / window,
                    ejection_tol,
                    paper_value=printed_power,
                    unit="1/s",
                ),
                QuantityRecord.judged(
                    "power",
                    expected_power,
                    mean_power,
                    ejection_tol,
                    paper_value=printed_power,
                    unit="MeV/s",
                ),
                QuantityRecord.judged(
                    "power (watts)",
                    expected_watts,
                    mean_power * MEV_IN_JOULES,
                    ejection_tol,
                    paper_value=PRINTED_POWER_WATTS_PER_KG * obj.mass,
                    unit="W",
                    note="printed watt figure disagrees with the printed MeV/s figure",
                ),
            ]
        )
        expected_dose = dose_rate(expected_watts / obj.mass, absorbed)
        records.append(
            QuantityRecord.judged(
                "dose rate",
                expected_dose,
                dose_rate(mean_power * MEV_IN_JOULES / obj.mass, absorbed),
                ejection_tol,
                paper_value=PRINTED_DOSE_REM_PER_YEAR,
                unit="rem/yr",
                note=dose_category(expected_dose),
            )
        )
        expected = simulate_decay(obj, duration, None, EventMode.EXPECTED, absorbed)
        for flag in expected.paper_consistency_flags:
            records.append(
                QuantityRecord.info(
                    f"consistency: {flag.label}",
                    flag.computed_value,
                    paper_value=flag.paper_value,
                    note=f"{flag.verdict} (ratio {flag.ratio:.3g}) {flag.note}".strip(),
                )
            )
        return records
