"""
Single-coordinate wavefunctions on a uniform grid.

Gaussians follow exp(-(x - x0)^2 / 2w^2) throughout: w is the 1/sqrt(e)
half-width of the amplitude, so the probability density has variance w^2/2.
Quadrature is the rectangle rule, which matches FFT sampling. The grid is
periodic as far as evolve_free is concerned.
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import signal

from .errors import (
    EmptyRegionError,
    GridDomainError,
    ResolutionError,
    ValidationError,
    format_error_message,
)
from .logging_config import get_logger
from .models import GaussianPeak, Grid1D, Region, WaveFunction
from .models.wave import BOUNDARY_LEAKAGE

logger = get_logger(__name__)

MIN_SAMPLES_PER_WIDTH = 3.0
MAX_MOMENT_ORDER = 4
EMPTY_REGION_MASS = 1e-300
LEAKAGE_THRESHOLD = 1e-10
FIT_HALF_WINDOW = 2  # log-parabola through 2 * 2 + 1 samples


def gaussian_superposition_amplitudes(
    grid: Grid1D, peaks: Sequence[GaussianPeak]
) -> np.ndarray:
    """Un-normalised sum of the peaks sampled on the grid."""
    if not peaks:
        raise ValidationError("at least one peak is required")
    x = grid.points()
    minimum = MIN_SAMPLES_PER_WIDTH * grid.spacing
    total = np.zeros(grid.n_points, dtype=np.complex128)
    for peak in peaks:
        if not grid.contains(peak.center):
            raise GridDomainError(
                f"peak centre {peak.center:.6g} outside grid "
                f"[{grid.x_min:.6g}, {grid.x_max:.6g}]"
            )
        if peak.width < minimum:
            raise ResolutionError(
                format_error_message(
                    "unresolvable_peak", width=peak.width, minimum=minimum
                )
            )
        total += peak.evaluate(x)
    return total


def make_gaussian_superposition(
    grid: Grid1D, peaks: Sequence[GaussianPeak]
) -> WaveFunction:
    """Normalised sum of Gaussian peaks."""
    raw = WaveFunction(grid, gaussian_superposition_amplitudes(grid, peaks))
    return raw.normalized_copy()


def truncated_packet(
    grid: Grid1D, lo: float, hi: float, width: float, center: float = 0.0
) -> WaveFunction:
    """Normalised Gaussian cut off hard outside [lo, hi]."""
    support = Region(lo, hi)
    x = grid.points()
    amps = np.where(
        support.mask(x), np.exp(-((x - center) ** 2) / (2.0 * width**2)), 0.0
    )
    return WaveFunction(grid, amps).normalized_copy()


def norm_squared(wf: WaveFunction) -> float:
    return float(np.sum(wf.probability_density()) * wf.grid.spacing)


def tail_mass(wf: WaveFunction, region: Region) -> float:
    """Probability in region, not renormalised by anything."""
    mask = region.mask(wf.x)
    return float(np.sum(wf.probability_density()[mask]) * wf.grid.spacing)


def moment(
    wf: WaveFunction,
    k: int,
    region: Optional[Region] = None,
    central: bool = False,
) -> float:
    """
    k-th moment of |psi|^2 over region (whole grid if None), normalised by the
    region's mass. With central=True the moment is taken about the region mean.
    """
    if not 0 <= k <= MAX_MOMENT_ORDER:
        raise ValidationError(f"moment order must be in [0, {MAX_MOMENT_ORDER}]")
    x = wf.x
    rho = wf.probability_density()
    if region is not None:
        mask = region.mask(x)
        x, rho = x[mask], rho[mask]
    total = float(np.sum(rho))
    if total * wf.grid.spacing < EMPTY_REGION_MASS:
        raise EmptyRegionError("region carries no probability mass")
    base = x
    if central:
        base = x - float(np.sum(x * rho)) / total
    return float(np.sum(base**k * rho)) / total


def _fit_log_parabola(wf: WaveFunction, index: int) -> Optional[GaussianPeak]:
    lo, hi = index - FIT_HALF_WINDOW, index + FIT_HALF_WINDOW + 1
    if lo < 0 or hi > wf.grid.n_points:
        return None
    magnitude = np.abs(wf.amplitudes[lo:hi])
    if np.any(magnitude == 0):
        return None
    dx = wf.grid.spacing
    u = np.arange(-FIT_HALF_WINDOW, FIT_HALF_WINDOW + 1, dtype=float)
    c2, c1, c0 = np.polyfit(u, np.log(magnitude), 2)
    if c2 >= 0:
        return None
    # log|psi| = c0 + c1 u + c2 u^2 with u = (x - x_i) / dx
    offset = -c1 / (2.0 * c2)
    width = dx * np.sqrt(-1.0 / (2.0 * c2))
    log_amplitude = c0 - c1**2 / (4.0 * c2)
    phase = np.angle(wf.amplitudes[index])
    return GaussianPeak(
        center=float(wf.x[index] + offset * dx),
        width=float(width),
        weight=complex(np.exp(log_amplitude) * np.exp(1j * phase)),
    )


def find_peaks(wf: WaveFunction, min_rel_height: float) -> Tuple[GaussianPeak, ...]:
    """
    Local maxima of |psi| above min_rel_height * max|psi|, each refined by a
    Gaussian fit (log-parabola through the 5 nearest samples). Sorted by
    descending |weight|. Maxima too close to the grid edge are skipped.
    """
    if not 0 < min_rel_height < 1:
        raise ValidationError("min_rel_height must lie in (0, 1)")
    magnitude = np.abs(wf.amplitudes)
    top = float(magnitude.max())
    if top == 0:
        return ()
    indices, _ = signal.find_peaks(magnitude, height=min_rel_height * top)
    fitted = (_fit_log_parabola(wf, int(i)) for i in indices)
    peaks = [p for p in fitted if p is not None]
    if len(peaks) < len(indices):
        logger.debug("peaks_skipped", found=len(indices), fitted=len(peaks))
    return tuple(sorted(peaks, key=lambda p: -abs(p.weight)))


def evolve_free(
    wf: WaveFunction, dt: float, mass: float = 1.0, hbar: float = 1.0
) -> WaveFunction:
    """
    Free-particle Schrodinger evolution by the split-step Fourier propagator,
    exact for the free Hamiltonian: psi_k *= exp(-i hbar k^2 dt / 2m).

    Amplitude reaching the grid edge (above LEAKAGE_THRESHOLD of the peak)
    wraps around the periodic cell; the result then carries the
    "boundary-leakage" warning.
    """
    if dt < 0:
        raise ValidationError(f"dt must be non-negative (got {dt})")
    if not mass > 0:
        raise ValidationError(f"mass must be positive (got {mass})")
    grid = wf.grid
    k = 2.0 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.spacing)
    propagator = np.exp(-0.5j * hbar * k**2 * dt / mass)
    evolved = np.fft.ifft(np.fft.fft(wf.amplitudes) * propagator)
    result = WaveFunction(grid, evolved, normalized=wf.normalized, warnings=wf.warnings)

    magnitude = np.abs(evolved)
    edge = max(1, grid.n_points // 64)
    boundary = max(float(magnitude[:edge].max()), float(magnitude[-edge:].max()))
    if boundary > LEAKAGE_THRESHOLD * float(magnitude.max()):
        logger.warning(
            "boundary_leakage", dt=dt, boundary_ratio=boundary / float(magnitude.max())
        )
        result = result.with_warning(BOUNDARY_LEAKAGE)
    return result


def gaussian_width_after(
    w0: float, t: float, mass: float = 1.0, hbar: float = 1.0
) -> float:
    """Width w(t) of a free minimum-uncertainty packet exp(-x^2 / 2 w0^2)."""
    return w0 * float(np.sqrt(1.0 + (hbar * t / (mass * w0**2)) ** 2))
