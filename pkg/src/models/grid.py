"""Discretisation types: the uniform 1D grid and closed regions on it."""

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

MIN_GRID_POINTS = 16


@dataclass(frozen=True, slots=True)
class Grid1D:
    """Uniform grid of n_points samples covering [x_min, x_max] inclusive."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise ValidationError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValidationError(
                f"grid requires x_min < x_max (got {self.x_min} >= {self.x_max})"
            )
        if int(self.n_points) != self.n_points or self.n_points < MIN_GRID_POINTS:
            raise ValidationError(
                f"grid requires an integer n_points >= {MIN_GRID_POINTS} "
                f"(got {self.n_points})"
            )
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def period(self) -> float:
        """Length of the periodic cell seen by the FFT."""
        return self.n_points * self.spacing

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def contains(self, x: float) -> bool:
        return self.x_min <= x <= self.x_max

    def refined(self, factor: int = 2) -> "Grid1D":
        """Same window with the spacing divided by factor."""
        return Grid1D(self.x_min, self.x_max, (self.n_points - 1) * factor + 1)

    @classmethod
    def covering(cls, lo: float, hi: float, max_spacing: float) -> "Grid1D":
        """Smallest grid over [lo, hi] whose spacing does not exceed max_spacing."""
        n = int(np.ceil((hi - lo) / max_spacing)) + 1
        return cls(lo, hi, max(n, MIN_GRID_POINTS))


@dataclass(frozen=True, slots=True)
class Region:
    """Closed interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValidationError(f"region requires lo < hi (got [{self.lo}, {self.hi}])")

    def mask(self, x: np.ndarray) -> np.ndarray:
        return (x >= self.lo) & (x <= self.hi)
