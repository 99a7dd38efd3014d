"""Macroscopic-object and decay-report types."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from ..errors import ValidationError

DEFAULT_RATE_PER_NUCLEON = 1e-16  # s^-1
DEFAULT_NUCLEON_WIDTH = 1e-14  # m
DEFAULT_ENERGY_PER_DECAY_MEV = 1.0
DEFAULT_COLLAPSE_WIDTH = 1e-7  # m
NUCLEONS_PER_KG = 1e27


class EventMode(Enum):
    """How collapse events are generated."""

    STREAM = "stream"  # materialised Poisson event times
    COUNT = "count"  # Poisson counts only
    EXPECTED = "expected"  # expectation values, no randomness


@dataclass(frozen=True, slots=True)
class MacroObject:
    """A lump of matter whose tail copy sits `separation` away from its counterpart."""

    n_nucleons: float
    mass: float
    separation: float
    rate_per_nucleon: float = DEFAULT_RATE_PER_NUCLEON
    nucleon_width: float = DEFAULT_NUCLEON_WIDTH
    energy_per_decay: float = DEFAULT_ENERGY_PER_DECAY_MEV
    collapse_width: float = DEFAULT_COLLAPSE_WIDTH

    def __post_init__(self) -> None:
        if not self.n_nucleons >= 1:
            raise ValidationError(f"n_nucleons must be >= 1 (got {self.n_nucleons})")
        for name in (
            "mass",
            "separation",
            "rate_per_nucleon",
            "nucleon_width",
            "energy_per_decay",
            "collapse_width",
        ):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive (got {getattr(self, name)})")

    @classmethod
    def from_mass(
        cls,
        mass: float,
        separation: float,
        nucleons_per_kg: float = NUCLEONS_PER_KG,
        **kwargs: float,
    ) -> "MacroObject":
        return cls(n_nucleons=mass * nucleons_per_kg, mass=mass, separation=separation, **kwargs)

    @property
    def collapse_rate(self) -> float:
        """Expected hits per second on the whole object, N * lambda."""
        return self.n_nucleons * self.rate_per_nucleon


@dataclass(frozen=True, slots=True)
class ConsistencyFlag:
    """A printed figure next to the value recomputed from its own inputs."""

    label: str
    paper_value: float
    computed_value: float
    ratio: float
    verdict: str
    note: str = ""


@dataclass(frozen=True, slots=True)
class DecayReport:
    """Aggregated outcome of one decay simulation window."""

    duration: float
    n_collapses: float  # fractional only in EXPECTED mode
    n_ejections: float
    ejection_rate: float
    power_mev_per_s: float
    power_watts: float
    dose_rem_per_year: float
    expected_ejection_rate: float
    expected_power_mev_per_s: float
    ejection_probability: float
    critical_distance: float
    mode: EventMode
    paper_consistency_flags: Tuple[ConsistencyFlag, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n_ejections > self.n_collapses:
            raise ValidationError("n_ejections cannot exceed n_collapses")
