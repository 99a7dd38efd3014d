"""Wavefunction value types."""

from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np

from ..errors import ValidationError
from .grid import Grid1D

BOUNDARY_LEAKAGE = "boundary-leakage"


@dataclass(frozen=True, slots=True)
class GaussianPeak:
    """weight * exp(-(x - center)^2 / 2 width^2)."""

    center: float
    width: float
    weight: complex = 1.0

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValidationError(f"peak width must be positive (got {self.width})")
        if not abs(self.weight) > 0:
            raise ValidationError("peak weight must be non-zero")
        object.__setattr__(self, "weight", complex(self.weight))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.weight * np.exp(-((x - self.center) ** 2) / (2.0 * self.width**2))


@dataclass(frozen=True, slots=True, eq=False)
class WaveFunction:
    """Complex amplitudes sampled on a Grid1D. Immutable once built."""

    grid: Grid1D
    amplitudes: np.ndarray
    normalized: bool = False
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.shape != (self.grid.n_points,):
            raise ValidationError(
                f"expected {self.grid.n_points} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def x(self) -> np.ndarray:
        return self.grid.points()

    def probability_density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def scaled(self, factor: complex) -> "WaveFunction":
        return replace(self, amplitudes=self.amplitudes * factor, normalized=False)

    def normalized_copy(self) -> "WaveFunction":
        norm2 = float(np.sum(self.probability_density()) * self.grid.spacing)
        if not norm2 > 0:
            raise ValidationError("cannot normalise a zero wavefunction")
        return replace(
            self, amplitudes=self.amplitudes / np.sqrt(norm2), normalized=True
        )

    def with_warning(self, warning: str) -> "WaveFunction":
        if warning in self.warnings:
            return self
        return replace(self, warnings=self.warnings + (warning,))
