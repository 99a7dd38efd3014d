from typing import Dict, List

import numpy as np
from scipy import optimize

from ..collapse import kernel_log_gradient
from ..config_types import DEFAULT_COLLAPSE_WIDTH, Scenario, ScenarioConfig, Units
from ..logging_config import get_logger
from ..models import CheckKind, CollapseKernel, CompoundSpec, QuantityRecord
from ..tail_analytics import (
    KICK_CALIBRATION,
    calibrate_kick_constant,
    compound_relative_state,
    excitation_threshold,
    kick_at_threshold_ratio,
    kick_expectation_linear,
    kick_expectation_numeric,
)
from .base import ScenarioDefinition, ScenarioResult, ScenarioRunner

logger = get_logger(__name__)

ATOMIC_WIDTH = 1e-10  # m
NUCLEAR_WIDTH = 1e-14  # m
PRINTED_ATOMIC_THRESHOLD = 1e-4  # m
PRINTED_NUCLEAR_THRESHOLD = 1.0  # m
LINEAR_REGIME = 0.1  # |d| w <= LINEAR_REGIME a^2
KICK_TOLERANCE = 0.1
THRESHOLD_TOLERANCE = 1e-9
ARITHMETIC_TOLERANCE = 1e-12


class KickExcitationScenario(ScenarioRunner):
    """Bound compound near a hit: quadrature kick, linear kick and excitation thresholds."""

    definition = ScenarioDefinition(
        scenario=Scenario.KICK_EXCITATION,
        summary="kick on a bound compound and the excitation distance a^2/w",
        required_parameters=("w", "d"),
        defaults={"grid_points": 1025},
        optional_parameters=("a", "com_width"),
        signed_parameters=frozenset({"d"}),
        integer_parameters=frozenset({"grid_points"}),
    )

    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        resolved = dict(parameters)
        resolved.setdefault("com_width", parameters["w"])
        return resolved

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        w, a, d = config.param("w"), config.param("a"), config.param("d")
        compound = CompoundSpec(
            com_width=config.param("com_width"), internal_rms=w, particle_width=w
        )
        relative = compound_relative_state(compound, config.int_param("grid_points"))
        kernel = CollapseKernel.gaussian(a, d)
        numeric = kick_expectation_numeric(relative, compound.com_width, kernel)
        linear = kick_expectation_linear(compound, kernel, d)

        records: List[QuantityRecord] = [self._kick_record(w, a, d, numeric, linear.mean_relative_displacement)]
        if d != 0:
            records.append(
                QuantityRecord.judged(
                    "kick direction",
                    1.0,
                    float(np.sign(numeric) * np.sign(d)),
                    0.0,
                    CheckKind.ABSOLUTE,
                    note="+1 when the relative coordinate moves toward the collapse centre",
                )
            )
        records.append(
            QuantityRecord.info(
                "kick order-of-magnitude form",
                numeric,
                predicted=linear.paper_estimate,
                unit="length",
                note="w^2 c'/c",
            )
        )

        threshold = excitation_threshold(w, a)
        records.append(
            QuantityRecord.judged(
                "excitation threshold",
                threshold,
                self._threshold_by_root(w, a),
                THRESHOLD_TOLERANCE,
                unit="length",
                note="distance where |c'/c| = 1/w, found by root search on the kernel",
            )
        )
        records.append(
            QuantityRecord.judged(
                "atomic excitation threshold",
                PRINTED_ATOMIC_THRESHOLD,
                excitation_threshold(ATOMIC_WIDTH, DEFAULT_COLLAPSE_WIDTH),
                ARITHMETIC_TOLERANCE,
                paper_value=PRINTED_ATOMIC_THRESHOLD,
                unit="m",
                note="w = 1e-10 m, a = 1e-7 m",
            )
        )
        records.append(
            QuantityRecord.judged(
                "nuclear excitation threshold",
                PRINTED_NUCLEAR_THRESHOLD,
                excitation_threshold(NUCLEAR_WIDTH, DEFAULT_COLLAPSE_WIDTH),
                ARITHMETIC_TOLERANCE,
                paper_value=PRINTED_NUCLEAR_THRESHOLD,
                unit="m",
                note="w = 1e-14 m, a = 1e-7 m",
            )
        )
        records.append(
            QuantityRecord.judged(
                "kick at threshold over width",
                KICK_CALIBRATION,
                kick_at_threshold_ratio(compound, a),
                2.0,
                CheckKind.ORDER_OF_MAGNITUDE,
                note="must lie in [kappa/2, 2 kappa]",
            )
        )
        calibration_distance = d if d != 0 else LINEAR_REGIME * a**2 / w
        records.append(
            QuantityRecord.judged(
                "kick calibration constant",
                KICK_CALIBRATION,
                calibrate_kick_constant(
                    compound, a, calibration_distance, config.int_param("grid_points")
                ),
                KICK_TOLERANCE,
            )
        )
        logger.info("kick_finished", w=w, a=a, d=d, numeric=numeric)
        return ScenarioResult(records=tuple(records))

    @staticmethod
    def _kick_record(
        w: float, a: float, d: float, numeric: float, linear: float
    ) -> QuantityRecord:
        if d == 0:
            return QuantityRecord.judged(
                "kick (quadrature vs linear)",
                0.0,
                numeric,
                1e-6 * w,
                CheckKind.ABSOLUTE,
                unit="length",
                note="kernel centred on the compound",
            )
        if abs(d) * w > LINEAR_REGIME * a**2:
            return QuantityRecord.info(
                "kick (quadrature vs linear)",
                numeric,
                predicted=linear,
                unit="length",
                note="|d| w > 0.1 a^2: outside the linearised regime",
            )
        return QuantityRecord.judged(
            "kick (quadrature vs linear)",
            linear,
            numeric,
            KICK_TOLERANCE,
            unit="length",
        )

    @staticmethod
    def _threshold_by_root(w: float, a: float) -> float:
        def excess(distance: float) -> float:
            kernel = CollapseKernel.gaussian(a, distance)
            return abs(kernel_log_gradient(kernel, 0.0)) - 1.0 / w

        upper = 10.0 * a**2 / w
        return float(optimize.brentq(excess, 0.0, upper, xtol=1e-15 * upper, rtol=1e-14))
