#!/usr/bin/env python3
"""
Configuration types module.

This module defines the scenario configuration shared by the loader, the
scenario runners and the CLI.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional

from .errors import ValidationError

# Central configuration defaults
DEFAULT_COLLAPSE_WIDTH = 1e-7  # m
DEFAULT_RATE_PER_NUCLEON = 1e-16  # s^-1
DEFAULT_WORKERS = 1

__all__ = (
    "DEFAULT_COLLAPSE_WIDTH",
    "DEFAULT_RATE_PER_NUCLEON",
    "DEFAULT_WORKERS",
    "OutputFormat",
    "Scenario",
    "ScenarioConfig",
    "Units",
)


class Scenario(Enum):
    TWO_PEAK_COLLAPSE = "two-peak-collapse"
    KICK_EXCITATION = "kick-excitation"
    CAT_DECAY = "cat-decay"
    KERNEL_COMPARE = "kernel-compare"
    SAMPLE_CENTERS = "sample-centers"
    FREE_SPREADING = "free-spreading"


class Units(Enum):
    """SI everywhere except scenarios declared `units = natural` (hbar = m = 1)."""

    SI = "si"
    NATURAL = "natural"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated configuration for one scenario run."""

    scenario: Scenario
    seed: int
    parameters: Mapping[str, float] = field(default_factory=dict)
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    units: Units = Units.SI
    workers: int = DEFAULT_WORKERS

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", dict(sorted(self.parameters.items())))

    def param(self, name: str) -> float:
        try:
            return float(self.parameters[name])
        except KeyError:
            raise ValidationError(
                f"scenario {self.scenario.value} has no parameter `{name}`"
            ) from None

    def int_param(self, name: str) -> int:
        return int(self.param(name))

    def flag(self, name: str) -> bool:
        return self.parameters.get(name, 0) != 0

    def echo(self) -> Dict[str, object]:
        """Everything needed to re-run, as reported in RunReport.parameters."""
        return dict(self.parameters)

    def to_text(self) -> str:
        """Render back to the `key = value` file format."""
        lines = [
            f"scenario = {self.scenario.value}",
            f"seed = {self.seed}",
            f"units = {self.units.value}",
        ]
        lines.extend(f"{key} = {value!r}" for key, value in self.parameters.items())
        return "\n".join(lines) + "\n"
