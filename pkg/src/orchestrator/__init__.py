import time
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Type

from .. import __version__
from ..config_types import Scenario, ScenarioConfig
from ..errors import GrwTailsError, ScenarioExecutionError
from ..logging_config import get_logger
from ..models import RunReport
from ..scenarios.base import ScenarioRunner, Series
from ..scenarios.factory import ScenarioFactory

logger = get_logger(__name__)


class ScenarioRegistry:
    """Registry for scenario runners."""

    def __init__(self):
        self._runners: Dict[Scenario, Type[ScenarioRunner]] = {}

    def register(self, scenario: Scenario, runner_class: Type[ScenarioRunner]) -> None:
        """Register a runner for a specific scenario."""
        self._runners[scenario] = runner_class
        logger.debug("runner_registered", runner=runner_class.__name__, scenario=scenario.value)

    def get_runner(self, scenario: Scenario) -> Type[ScenarioRunner]:
        """Get the runner class for a scenario."""
        if scenario not in self._runners:
            raise ValueError(f"No runner registered for scenario: {scenario.value}")
        return self._runners[scenario]

    def list_scenarios(self) -> list[Scenario]:
        """List all registered scenarios."""
        return list(self._runners.keys())


# Global registry instance
scenario_registry = ScenarioRegistry()


@dataclass(frozen=True)
class ScenarioRun:
    """A finished run: the report plus its optional plot-ready series."""

    report: RunReport
    series: Tuple[Series, ...] = ()


class ScenarioOrchestrator:
    """Selects the runner for a configuration and turns its result into a report."""

    def __init__(
        self,
        registry: Optional[ScenarioRegistry] = None,
        runner_factory: Optional[ScenarioFactory] = None,
    ):
        self.registry = registry or scenario_registry
        self.runner_factory = runner_factory

    def create_runner(self, scenario: Scenario) -> ScenarioRunner:
        if self.runner_factory is not None:
            return self.runner_factory.create_runner(scenario)
        return self.registry.get_runner(scenario)()

    def execute(self, config: ScenarioConfig) -> ScenarioRun:
        """
        Run one scenario.

        Args:
            config: Validated configuration with resolved parameters

        Returns:
            ScenarioRun with the report and any series

        Raises:
            ScenarioExecutionError: wrapping any error raised while running
        """
        name = config.scenario.value
        started = time.perf_counter()
        logger.info("scenario_started", scenario=name, seed=config.seed)
        try:
            runner = self.create_runner(config.scenario)
            result = runner.run(config)
        except ScenarioExecutionError:
            raise
        except GrwTailsError as e:
            logger.error("scenario_error", scenario=name, error=str(e))
            raise ScenarioExecutionError(name, str(e)) from e
        except Exception as e:
            logger.error("scenario_unexpected_error", scenario=name, error=repr(e))
            raise ScenarioExecutionError(name, f"{type(e).__name__}: {e}") from e

        elapsed = time.perf_counter() - started
        report = RunReport(
            scenario=name,
            parameters=config.echo(),
            seed=config.seed,
            units=config.units.value,
            records=result.records,
            version=__version__,
            elapsed_seconds=elapsed,
        )
        logger.info(
            "scenario_finished",
            scenario=name,
            records=len(report.records),
            failed=len(report.failed),
            elapsed=round(elapsed, 3),
        )
        return ScenarioRun(report=report, series=result.series)


def run_scenario(config: ScenarioConfig) -> RunReport:
    """Run a validated configuration with the registered runners."""
    from .init_scenarios import initialize_scenarios

    initialize_scenarios()
    return ScenarioOrchestrator(scenario_registry).execute(config).report


__all__ = [
    "ScenarioOrchestrator",
    "ScenarioRegistry",
    "ScenarioRun",
    "run_scenario",
    "scenario_registry",
]
