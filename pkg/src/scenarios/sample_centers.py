from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy import stats

from ..collapse import collapse_center_cdf, grw_hit, sample_collapse_centers
from ..config_types import Scenario, ScenarioConfig, Units
from ..errors import ValidationError
from ..logging_config import get_logger
from ..models import CheckKind, GaussianPeak, Grid1D, QuantityRecord, WaveFunction
from ..random_streams import substream
from ..wavefunction import make_gaussian_superposition
from .base import ScenarioDefinition, ScenarioResult, ScenarioRunner

logger = get_logger(__name__)

KS_LIMIT = 0.02
SIGMA_BAND = 3.0
SPREAD_TOLERANCE = 0.02
DEFAULT_SEPARATION_SPREADS = 10.0
WINDOW_SPREADS = 12.0
SAMPLES_PER_WIDTH = 10.0
MAX_HITS = 10_000
HIT_STREAM_INDEX = 3  # streams 0-2 draw the centres of the three states

Cdf = Callable[[np.ndarray], np.ndarray]


def center_spread(w: float, a: float) -> float:
    """Standard deviation of the collapse-centre density of one Gaussian peak."""
    return float(np.sqrt((w**2 + a**2) / 2.0))


def mixture_cdf(centers: Tuple[float, ...], weights: Tuple[float, ...], spread: float) -> Cdf:
    def cdf(x: np.ndarray) -> np.ndarray:
        return sum(
            weight * stats.norm.cdf(x, loc=center, scale=spread)
            for center, weight in zip(centers, weights)
        )

    return cdf


class SampleCentersScenario(ScenarioRunner):
    """Collapse-centre sampling on three states against independent closed-form CDFs."""

    definition = ScenarioDefinition(
        scenario=Scenario.SAMPLE_CENTERS,
        summary="collapse-centre draws against the smeared Born density",
        required_parameters=("w",),
        defaults={"heavy_weight": 0.9, "draws": 100_000},
        optional_parameters=("a", "separation", "grid_points"),
        fraction_parameters=frozenset({"heavy_weight"}),
        integer_parameters=frozenset({"draws", "grid_points"}),
    )

    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        resolved = dict(parameters)
        w, a = parameters["w"], parameters["a"]
        spread = center_spread(w, a)
        separation = resolved.setdefault("separation", DEFAULT_SEPARATION_SPREADS * spread)
        span = separation + 2.0 * WINDOW_SPREADS * spread
        resolved.setdefault(
            "grid_points",
            float(int(np.ceil(span * SAMPLES_PER_WIDTH / min(w, a))) + 1),
        )
        return resolved

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        w, a = config.param("w"), config.param("a")
        separation = config.param("separation")
        heavy = config.param("heavy_weight")
        draws = config.int_param("draws")
        if not 0 < heavy < 1:
            raise ValidationError(f"heavy_weight must lie strictly inside (0, 1) (got {heavy})")
        spread = center_spread(w, a)
        half = 0.5 * separation
        reach = half + WINDOW_SPREADS * spread
        grid = Grid1D(-reach, reach, config.int_param("grid_points"))

        states = {
            "single": (
                make_gaussian_superposition(grid, [GaussianPeak(0.0, w)]),
                mixture_cdf((0.0,), (1.0,), spread),
            ),
            "symmetric": (
                make_gaussian_superposition(
                    grid, [GaussianPeak(-half, w), GaussianPeak(half, w)]
                ),
                mixture_cdf((-half, half), (0.5, 0.5), spread),
            ),
            "weighted": (
                make_gaussian_superposition(
                    grid,
                    [
                        GaussianPeak(-half, w, np.sqrt(heavy)),
                        GaussianPeak(half, w, np.sqrt(1.0 - heavy)),
                    ],
                ),
                mixture_cdf((-half, half), (heavy, 1.0 - heavy), spread),
            ),
        }

        records: List[QuantityRecord] = []
        samples: Dict[str, np.ndarray] = {}
        for index, (label, (state, oracle)) in enumerate(states.items()):
            samples[label] = sample_collapse_centers(state, a, substream(config.seed, index), draws)
            records.append(
                QuantityRecord.judged(
                    f"KS distance ({label})",
                    0.0,
                    float(stats.kstest(samples[label], oracle).statistic),
                    KS_LIMIT,
                    CheckKind.ABSOLUTE,
                    note="empirical CDF against the closed-form smeared density",
                )
            )

        single = samples["single"]
        records.append(
            QuantityRecord.judged(
                "centre mean (single)",
                0.0,
                float(single.mean()),
                SIGMA_BAND * spread / np.sqrt(draws),
                CheckKind.ABSOLUTE,
            )
        )
        records.append(
            QuantityRecord.judged(
                "centre spread (single)", spread, float(single.std()), SPREAD_TOLERANCE
            )
        )
        records.append(
            self._fraction_record(
                "left fraction (symmetric)", 0.5, float(np.mean(samples["symmetric"] < 0)), draws
            )
        )
        records.append(
            self._fraction_record(
                "heavy fraction (weighted)", heavy, float(np.mean(samples["weighted"] < 0)), draws
            )
        )
        records.append(self._hit_selection_record(states["weighted"][0], a, config, draws))
        logger.info("sample_centers_finished", draws=draws, points=grid.n_points)
        return ScenarioResult(records=tuple(records))

    @staticmethod
    def _fraction_record(name: str, expected: float, measured: float, n: int) -> QuantityRecord:
        return QuantityRecord.judged(
            name,
            expected,
            measured,
            SIGMA_BAND * np.sqrt(expected * (1.0 - expected) / n),
            CheckKind.ABSOLUTE,
        )

    def _hit_selection_record(
        self, state: WaveFunction, a: float, config: ScenarioConfig, draws: int
    ) -> QuantityRecord:
        """Fraction of full hits after which the heavy (left) peak dominates."""
        heavy = config.param("heavy_weight")
        w, separation = config.param("w"), config.param("separation")
        # centre at which both peaks keep equal mass after the hit
        boundary = (a**2 + w**2) * np.log(heavy / (1.0 - heavy)) / (2.0 * separation)
        edges, cdf = collapse_center_cdf(state, a)
        expected = float(np.interp(boundary, edges, cdf))
        hits = min(draws, MAX_HITS)
        rng = substream(config.seed, HIT_STREAM_INDEX)
        left = state.x < 0
        heavy_survives = 0
        for _ in range(hits):
            post = grw_hit(state, a, rng).post_state.probability_density()
            heavy_survives += int(post[left].sum() > post[~left].sum())
        return self._fraction_record(
            "heavy peak survives hit", expected, heavy_survives / hits, hits
        )
