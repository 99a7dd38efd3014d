from .base import ScenarioDefinition, ScenarioResult, ScenarioRunner, Series
from .cat_decay import CatDecayScenario
from .free_spreading import FreeSpreadingScenario
from .kernel_compare import KernelCompareScenario
from .kick import KickExcitationScenario
from .sample_centers import SampleCentersScenario
from .two_peak import TwoPeakCollapseScenario

__all__ = [
    "CatDecayScenario",
    "FreeSpreadingScenario",
    "KernelCompareScenario",
    "KickExcitationScenario",
    "SampleCentersScenario",
    "ScenarioDefinition",
    "ScenarioResult",
    "ScenarioRunner",
    "Series",
    "TwoPeakCollapseScenario",
]
