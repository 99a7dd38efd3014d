"""
Factory for creating scenario runner instances.
"""

from typing import Dict, Tuple, Type

from ..config_types import Scenario
from ..errors import ConfigurationError, format_error_message
from .base import ScenarioDefinition, ScenarioRunner
from .cat_decay import CatDecayScenario
from .free_spreading import FreeSpreadingScenario
from .kernel_compare import KernelCompareScenario
from .kick import KickExcitationScenario
from .sample_centers import SampleCentersScenario
from .two_peak import TwoPeakCollapseScenario

_RUNNERS: Dict[Scenario, Type[ScenarioRunner]] = {
    Scenario.TWO_PEAK_COLLAPSE: TwoPeakCollapseScenario,
    Scenario.KICK_EXCITATION: KickExcitationScenario,
    Scenario.CAT_DECAY: CatDecayScenario,
    Scenario.KERNEL_COMPARE: KernelCompareScenario,
    Scenario.SAMPLE_CENTERS: SampleCentersScenario,
    Scenario.FREE_SPREADING: FreeSpreadingScenario,
}


class ScenarioFactory:
    """Factory for creating scenario runners."""

    def create_runner(self, scenario: Scenario) -> ScenarioRunner:
        """
        Create a runner instance for the given scenario.

        Raises:
            ConfigurationError: If the scenario is not supported
        """
        try:
            return _RUNNERS[scenario]()
        except KeyError:
            raise ConfigurationError(
                format_error_message(
                    "unknown_scenario", name=scenario, available=", ".join(available_scenarios())
                )
            ) from None


def definition_for(scenario: Scenario) -> ScenarioDefinition:
    return _RUNNERS[scenario].definition


def available_scenarios() -> Tuple[str, ...]:
    return tuple(s.value for s in Scenario)
