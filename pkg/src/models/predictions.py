"""Closed-form prediction and measurement records for tail analytics."""

from dataclasses import dataclass

from ..errors import ValidationError


@dataclass(frozen=True, slots=True)
class TwoPeakPrediction:
    """
    Post-collapse parameters of an equal-weight two-Gaussian state hit at 0.

    suppression is the amplitude ratio tail/dominant,
    exp(-exponent_constant * x0^2 / a_prime^2).
    """

    w_prime: float
    x0_prime: float
    a_prime: float
    suppression: float
    exponent_constant: float
    x0: float = 0.0

    @property
    def displacement_fraction(self) -> float:
        """(x0 - x0') / x0; 0 when x0 is 0."""
        return 0.0 if self.x0 == 0 else 1.0 - self.x0_prime / self.x0


@dataclass(frozen=True, slots=True)
class CompoundSpec:
    """1D stand-in for a bound compound: x = R + r."""

    com_width: float
    internal_rms: float
    particle_width: float

    def __post_init__(self) -> None:
        for name in ("com_width", "internal_rms", "particle_width"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")


@dataclass(frozen=True, slots=True)
class KickPrediction:
    """Linearised kick: mean relative displacement after a hit."""

    mean_relative_displacement: float
    log_gradient: float
    paper_estimate: float


@dataclass(frozen=True, slots=True)
class TailMeasurement:
    """Tail peak parameters recovered from the grid after a hit."""

    x0_measured: float
    suppression_measured: float
    w_prime_measured: float
    spacing: float


@dataclass(frozen=True, slots=True)
class SweepPoint:
    """One (w, a, x0) case of the two-peak sweep, closed form next to the grid."""

    w: float
    a: float
    x0: float
    prediction: TwoPeakPrediction
    measurement: TailMeasurement

    @property
    def displacement_error(self) -> float:
        """Relative error of the measured tail position (absolute when x0' is 0)."""
        expected = self.prediction.x0_prime
        diff = abs(self.measurement.x0_measured - expected)
        return diff if expected == 0 else diff / abs(expected)

    @property
    def suppression_error(self) -> float:
        expected = self.prediction.suppression
        return abs(self.measurement.suppression_measured - expected) / expected
