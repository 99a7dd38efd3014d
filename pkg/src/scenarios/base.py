from abc import abstractmethod
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Protocol, Sequence, Tuple

import numpy as np
from scipy import constants

from ..config_types import Scenario, ScenarioConfig, Units
from ..models import QuantityRecord, WaveFunction

SeriesRows = List[Tuple[float, ...]]


@dataclass(frozen=True)
class Series:
    """A plot-ready table written as an optional CSV side file."""

    name: str
    header: Tuple[str, ...]
    rows: SeriesRows


@dataclass(frozen=True)
class ScenarioResult:
    records: Tuple[QuantityRecord, ...]
    series: Tuple[Series, ...] = ()


@dataclass(frozen=True)
class ScenarioDefinition:
    """
    What a scenario accepts.

    Every numeric parameter must be positive unless it is listed in
    signed_parameters (any finite value), fraction_parameters (inside [0, 1])
    or flag_parameters (0 or 1). integer_parameters must be whole numbers.
    """

    scenario: Scenario
    summary: str
    required_parameters: Tuple[str, ...]
    defaults: Mapping[str, float] = field(default_factory=dict)
    optional_parameters: Tuple[str, ...] = ()
    signed_parameters: FrozenSet[str] = frozenset()
    fraction_parameters: FrozenSet[str] = frozenset()
    flag_parameters: FrozenSet[str] = frozenset()
    integer_parameters: FrozenSet[str] = frozenset()
    units: Tuple[Units, ...] = (Units.SI, Units.NATURAL)

    @property
    def accepted_parameters(self) -> FrozenSet[str]:
        return frozenset(self.required_parameters) | frozenset(self.defaults) | frozenset(
            self.optional_parameters
        )

    def describe(self) -> str:
        lines = [f"{self.scenario.value}: {self.summary}"]
        lines.append(f"  required: {', '.join(self.required_parameters)}")
        if self.defaults:
            rendered = ", ".join(f"{k}={v:g}" for k, v in sorted(self.defaults.items()))
            lines.append(f"  defaults: {rendered}")
        if self.optional_parameters:
            lines.append(f"  derived when absent: {', '.join(self.optional_parameters)}")
        lines.append(f"  units: {', '.join(u.value for u in self.units)}")
        return "\n".join(lines)


class ScenarioRunner(Protocol):
    """Protocol for scenario runners."""

    definition: ScenarioDefinition

    @abstractmethod
    def resolve_parameters(
        self, parameters: Dict[str, float], units: Units
    ) -> Dict[str, float]:
        """
        Fill parameters derived from the others (grid windows, time scales).

        Returns:
            The completed parameter map; echoed in the report.
        """
        pass

    @abstractmethod
    def run(self, config: ScenarioConfig) -> ScenarioResult:
        """
        Run the scenario.

        Args:
            config: Validated configuration with resolved parameters

        Returns:
            ScenarioResult with one record per reproduced quantity
        """
        pass


def hbar_for(units: Units) -> float:
    return 1.0 if units is Units.NATURAL else constants.hbar


def default_mass_for(units: Units) -> float:
    return 1.0 if units is Units.NATURAL else constants.m_n


def snapshot_series(name: str, states: Sequence[Tuple[str, WaveFunction]]) -> Series:
    """|psi|^2 of several states on their common grid, one column per state."""
    x = states[0][1].x
    densities = [wf.probability_density() for _, wf in states]
    rows = [
        (float(x[i]), *(float(d[i]) for d in densities)) for i in range(x.size)
    ]
    return Series(name, ("x", *(label for label, _ in states)), rows)


def event_series(name: str, times: Optional[np.ndarray]) -> Tuple[Series, ...]:
    if times is None:
        return ()
    return (Series(name, ("time_s",), [(float(t),) for t in times]),)
