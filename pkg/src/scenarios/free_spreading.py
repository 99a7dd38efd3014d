from typing import Dict

import numpy as np

from ..config_types import Scenario, ScenarioConfig, Units
from ..logging_config import get_logger
from ..models import CheckKind, GaussianPeak, Grid1D, QuantityRecord, Region
from ..models.wave import BOUNDARY_LEAKAGE
from ..wavefunction import (
    evolve_free,
    gaussian_width_after,
    make_gaussian_superposition,
    moment,
    norm_squared,
    tail_mass,
    truncated_packet,
)
from .base import (
    ScenarioDefinition,
    ScenarioResult,
    ScenarioRunner,
    default_mass_for,
    hbar_for,
    snapshot_series,
)

logger = get_logger(__name__)

TRUNCATION_WIDTHS = 2.0
OUTSIDE_WINDOW_FACTOR = 1.5  # leaked mass is counted beyond 1.5x the support
GRID_HALF_SPAN_WIDTHS = 20.0
SHORT_STEP = 1e-4  # in units of the spreading time m w^2 / hbar
SPREAD_DURATION = 2.0  # likewise
WIDTH_TOLERANCE = 1e-3
NORM_TOLERANCE = 1e-10
SPREADING_FLOOR = 1e-12


class FreeSpreadingScenario(ScenarioRunner):
    """Free evolution of a Gaussian and of a hard-truncated packet."""

    definition = ScenarioDefinition(
        scenario=Scenario.FREE_SPREADING,
        summary="free-particle spreading; truncated packets leave their support at once",
        required_parameters=("w",),
        defaults={"grid_points": 2048},
        optional_parameters=("dt", "duration", "particle_mass", "x_min", "x_max"),
        signed_parameters=frozenset({"x_min", "x_max"}),
        integer_parameters=frozenset({"grid_points"}),
    )

    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        resolved = dict(parameters)
        w = parameters["w"]
        mass = resolved.setdefault("particle_mass", default_mass_for(units))
        spreading_time = mass * w**2 / hbar_for(units)
        resolved.setdefault("dt", SHORT_STEP * spreading_time)
        resolved.setdefault("duration", SPREAD_DURATION * spreading_time)
        resolved.setdefault("x_min", -GRID_HALF_SPAN_WIDTHS * w)
        resolved.setdefault("x_max", GRID_HALF_SPAN_WIDTHS * w)
        return resolved

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        w = config.param("w")
        mass = config.param("particle_mass")
        hbar = hbar_for(config.units)
        dt, duration = config.param("dt"), config.param("duration")
        grid = Grid1D(config.param("x_min"), config.param("x_max"), config.int_param("grid_points"))

        packet = make_gaussian_superposition(grid, [GaussianPeak(0.0, w)])
        spread = evolve_free(packet, duration, mass, hbar)
        measured_width = float(np.sqrt(2.0 * moment(spread, 2, central=True)))

        edge = TRUNCATION_WIDTHS * w
        truncated = truncated_packet(grid, -edge, edge, w)
        leaked = evolve_free(truncated, dt, mass, hbar)
        window = Region(-OUTSIDE_WINDOW_FACTOR * edge, OUTSIDE_WINDOW_FACTOR * edge)
        outside = norm_squared(leaked) - tail_mass(leaked, window)

        records = (
            QuantityRecord.judged(
                "packet width",
                gaussian_width_after(w, duration, mass, hbar),
                measured_width,
                WIDTH_TOLERANCE,
                unit="length",
                note="sqrt(2 var) of |psi|^2 against w0 sqrt(1 + (hbar t / m w0^2)^2)",
            ),
            QuantityRecord.judged(
                "norm after evolution",
                1.0,
                norm_squared(spread),
                NORM_TOLERANCE,
                CheckKind.ABSOLUTE,
            ),
            QuantityRecord.judged(
                "mass outside truncated support",
                None,
                outside,
                SPREADING_FLOOR,
                CheckKind.LOWER_BOUND,
                note=(
                    f"after dt = {dt:.3g}; support [-{TRUNCATION_WIDTHS:g} w, {TRUNCATION_WIDTHS:g} w], "
                    f"mass counted outside {OUTSIDE_WINDOW_FACTOR:g}x the support"
                ),
            ),
            QuantityRecord.info(
                "boundary leakage",
                float(BOUNDARY_LEAKAGE in spread.warnings or BOUNDARY_LEAKAGE in leaked.warnings),
                note="1 when amplitude reached the grid edge",
            ),
        )
        logger.info("free_spreading_finished", width=measured_width, outside=outside)
        return ScenarioResult(
            records=records,
            series=(
                snapshot_series(
                    "free-spreading_states",
                    [
                        ("gaussian_initial", packet),
                        ("gaussian_evolved", spread),
                        ("truncated_initial", truncated),
                        ("truncated_evolved", leaked),
                    ],
                ),
            ),
        )
