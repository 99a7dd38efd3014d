"""Collapse kernel types."""

from dataclasses import dataclass
from enum import Enum

from ..errors import ValidationError
from .wave import WaveFunction

MIN_CUTOFF_MULTIPLE = 3.0
DEFAULT_CUTOFF_MULTIPLE = 10.0
TAPER_FRACTION = 0.05


class KernelKind(Enum):
    """Collapse function family with explicit string values for serialization."""

    GAUSSIAN = "gaussian"
    COMPACT_SUPPORT = "compact_support"


@dataclass(frozen=True, slots=True)
class CollapseKernel:
    """
    Collapse function c(x) of width a centred on x0.

    GAUSSIAN is exp(-(x - x0)^2 / 2a^2). COMPACT_SUPPORT agrees with it up to
    cutoff_multiple * a and is exactly zero beyond; with taper=True the outer
    TAPER_FRACTION of the support radius is rolled off by a smooth step.
    """

    kind: KernelKind
    width: float
    center: float = 0.0
    cutoff_multiple: float = DEFAULT_CUTOFF_MULTIPLE
    taper: bool = False

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValidationError(f"kernel width must be positive (got {self.width})")
        if (
            self.kind is KernelKind.COMPACT_SUPPORT
            and not self.cutoff_multiple >= MIN_CUTOFF_MULTIPLE
        ):
            raise ValidationError(
                f"compact kernel needs cutoff_multiple >= {MIN_CUTOFF_MULTIPLE} "
                f"(got {self.cutoff_multiple})"
            )

    @classmethod
    def gaussian(cls, width: float, center: float = 0.0) -> "CollapseKernel":
        return cls(KernelKind.GAUSSIAN, width, center)

    @classmethod
    def compact(
        cls,
        width: float,
        center: float = 0.0,
        cutoff_multiple: float = DEFAULT_CUTOFF_MULTIPLE,
        taper: bool = False,
    ) -> "CollapseKernel":
        return cls(KernelKind.COMPACT_SUPPORT, width, center, cutoff_multiple, taper)

    @property
    def support_radius(self) -> float:
        """Distance beyond which the kernel vanishes (inf for GAUSSIAN)."""
        if self.kind is KernelKind.GAUSSIAN:
            return float("inf")
        return self.cutoff_multiple * self.width

    def centered_at(self, center: float) -> "CollapseKernel":
        return CollapseKernel(
            self.kind, self.width, center, self.cutoff_multiple, self.taper
        )


@dataclass(frozen=True, slots=True, eq=False)
class CollapseOutcome:
    """One hit: where it landed, the pre-renormalisation weight, the new state."""

    center: float
    pre_weight: float
    post_state: WaveFunction
