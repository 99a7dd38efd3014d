from typing import Dict

import numpy as np

from ..collapse import apply_collapse
from ..config_types import Scenario, ScenarioConfig, Units
from ..errors import ValidationError
from ..logging_config import get_logger
from ..models import CheckKind, CollapseKernel, GaussianPeak, Grid1D, QuantityRecord, Region
from ..wavefunction import make_gaussian_superposition, tail_mass
from .base import ScenarioDefinition, ScenarioResult, ScenarioRunner, snapshot_series

logger = get_logger(__name__)

DEFAULT_SEPARATION_WIDTHS = 20.0  # in units of a
GRID_MARGIN_WIDTHS = 10.0  # in units of w
SAMPLES_PER_WIDTH = 10.0
DISTORTION_TOLERANCE = 1e-6


class KernelCompareScenario(ScenarioRunner):
    """Gaussian against compact-support collapse on a state with a distant tail."""

    definition = ScenarioDefinition(
        scenario=Scenario.KERNEL_COMPARE,
        summary="residual tail mass after Gaussian and compact-support hits",
        required_parameters=("w",),
        defaults={"cutoff_multiple": 10.0, "taper": 0.0},
        optional_parameters=("a", "separation", "grid_points"),
        flag_parameters=frozenset({"taper"}),
        integer_parameters=frozenset({"grid_points"}),
    )

    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        resolved = dict(parameters)
        w, a = parameters["w"], parameters["a"]
        separation = resolved.setdefault("separation", DEFAULT_SEPARATION_WIDTHS * a)
        span = separation + 2.0 * GRID_MARGIN_WIDTHS * w
        resolved.setdefault(
            "grid_points", float(int(np.ceil(span * SAMPLES_PER_WIDTH / w)) + 1)
        )
        return resolved

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        w, a = config.param("w"), config.param("a")
        separation = config.param("separation")
        compact = CollapseKernel.compact(
            a, 0.0, config.param("cutoff_multiple"), taper=config.flag("taper")
        )
        if separation - GRID_MARGIN_WIDTHS * w <= compact.support_radius:
            raise ValidationError(
                f"tail at {separation:.3g} overlaps the compact support "
                f"(radius {compact.support_radius:.3g}); increase separation"
            )
        grid = Grid1D(
            -GRID_MARGIN_WIDTHS * w,
            separation + GRID_MARGIN_WIDTHS * w,
            config.int_param("grid_points"),
        )
        state = make_gaussian_superposition(
            grid, [GaussianPeak(0.0, w), GaussianPeak(separation, w)]
        )
        gaussian_hit = apply_collapse(state, CollapseKernel.gaussian(a, 0.0))
        compact_hit = apply_collapse(state, compact)
        # from midway between the support edge and the tail peak to the grid end
        tail_region = Region(0.5 * (compact.support_radius + separation), grid.x_max)

        distortion = float(
            np.max(np.abs(compact_hit.post_state.amplitudes - gaussian_hit.post_state.amplitudes))
        )
        records = (
            QuantityRecord.judged(
                "residual tail mass (gaussian)",
                None,
                tail_mass(gaussian_hit.post_state, tail_region),
                0.0,
                CheckKind.LOWER_BOUND,
                note="strictly positive: a Gaussian hit never erases the tail",
            ),
            QuantityRecord.judged(
                "residual tail mass (compact)",
                0.0,
                tail_mass(compact_hit.post_state, tail_region),
                0.0,
                CheckKind.ABSOLUTE,
                note="exactly zero outside the support",
            ),
            QuantityRecord.judged(
                "dominant-peak distortion",
                0.0,
                distortion,
                DISTORTION_TOLERANCE,
                CheckKind.ABSOLUTE,
                note="max |psi_compact - psi_gaussian| after renormalisation",
            ),
            QuantityRecord.info("pre-weight (gaussian)", gaussian_hit.pre_weight),
            QuantityRecord.info("pre-weight (compact)", compact_hit.pre_weight),
        )
        logger.info("kernel_compare_finished", separation=separation, taper=compact.taper)
        return ScenarioResult(
            records=records,
            series=(
                snapshot_series(
                    "kernel-compare_states",
                    [
                        ("before", state),
                        ("gaussian", gaussian_hit.post_state),
                        ("compact", compact_hit.post_state),
                    ],
                ),
            ),
        )
