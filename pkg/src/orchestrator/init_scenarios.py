"""Initialize and register all scenario runners."""

from ..config_types import Scenario
from ..scenarios import (
    CatDecayScenario,
    FreeSpreadingScenario,
    KernelCompareScenario,
    KickExcitationScenario,
    SampleCentersScenario,
    TwoPeakCollapseScenario,
)
from . import scenario_registry


def initialize_scenarios():
    """Register all available scenario runners."""
    scenario_registry.register(Scenario.TWO_PEAK_COLLAPSE, TwoPeakCollapseScenario)
    scenario_registry.register(Scenario.KICK_EXCITATION, KickExcitationScenario)
    scenario_registry.register(Scenario.CAT_DECAY, CatDecayScenario)
    scenario_registry.register(Scenario.KERNEL_COMPARE, KernelCompareScenario)
    scenario_registry.register(Scenario.SAMPLE_CENTERS, SampleCentersScenario)
    scenario_registry.register(Scenario.FREE_SPREADING, FreeSpreadingScenario)
