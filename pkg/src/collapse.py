"""
Collapse functions, collapse-centre sampling and hits.

A hit multiplies psi by c(x) and renormalises. The centre x0 of a GRW hit is
drawn from p(x0) ∝ ∫ c^2(x - x0) |psi(x)|^2 dx, i.e. |psi|^2 smeared with the
squared kernel; this is the weight ||c(. - x0) psi||^2 that the renormalisation
divides out, and it reduces to |psi(x0)|^2 for a narrow kernel. Centres are
restricted to the grid window.
"""

from typing import Optional, Tuple

import numpy as np
from scipy import signal

from .cache import CenterDensityCache, get_density_cache
from .errors import AnnihilationError, SupportError, ValidationError
from .logging_config import get_logger
from .models import CollapseKernel, CollapseOutcome, KernelKind, WaveFunction
from .models.kernel import TAPER_FRACTION

logger = get_logger(__name__)

ANNIHILATION_THRESHOLD = 1e-300


def _taper_parameter(kernel: CollapseKernel, distance: np.ndarray) -> np.ndarray:
    """Position inside the taper band, 0 at its inner edge and 1 at the cutoff."""
    radius = kernel.support_radius
    return (distance - (1.0 - TAPER_FRACTION) * radius) / (TAPER_FRACTION * radius)


def _log_smooth_step(t: np.ndarray) -> np.ndarray:
    # log of A / (A + B), A = exp(-1/(1-t)), B = exp(-1/t): 1 at t<=0, 0 at t>=1
    with np.errstate(divide="ignore"):
        log_a = np.where(t < 1, -1.0 / np.where(t < 1, 1.0 - t, 1.0), -np.inf)
        log_b = np.where(t > 0, -1.0 / np.where(t > 0, t, 1.0), -np.inf)
    return np.where(t <= 0, 0.0, log_a - np.logaddexp(log_a, log_b))


def log_kernel_values(kernel: CollapseKernel, x: np.ndarray) -> np.ndarray:
    """ln c(x); -inf where a compact kernel vanishes."""
    x = np.asarray(x, dtype=float)
    s = x - kernel.center
    log_c = -(s**2) / (2.0 * kernel.width**2)
    if kernel.kind is KernelKind.GAUSSIAN:
        return log_c
    distance = np.abs(s)
    if kernel.taper:
        t = np.clip(_taper_parameter(kernel, distance), -1.0, 1.0)
        log_c = log_c + _log_smooth_step(t)
    return np.where(distance > kernel.support_radius, -np.inf, log_c)


def kernel_values(kernel: CollapseKernel, x: np.ndarray) -> np.ndarray:
    return np.exp(log_kernel_values(kernel, x))


def kernel_value(kernel: CollapseKernel, x: float) -> float:
    """c(x): exp(-(x - x0)^2 / 2a^2), exactly 0 outside a compact kernel's support."""
    return float(kernel_values(kernel, np.asarray([x]))[0])


def kernel_log_gradient(kernel: CollapseKernel, x: float) -> float:
    """(d/dx) ln c(x); -(x - x0)/a^2 for the Gaussian kernel."""
    if kernel_value(kernel, x) <= 0:
        raise SupportError(
            f"collapse function vanishes at x = {x:.6g} "
            f"(support radius {kernel.support_radius:.6g} around {kernel.center:.6g})"
        )
    s = x - kernel.center
    gradient = -s / kernel.width**2
    if kernel.kind is KernelKind.COMPACT_SUPPORT and kernel.taper:
        t = float(_taper_parameter(kernel, np.asarray(abs(s))))
        if 0 < t < 1:
            step = float(np.exp(_log_smooth_step(np.asarray(t))))
            d_log_a = -1.0 / (1.0 - t) ** 2
            d_log_b = 1.0 / t**2
            d_log_step = (1.0 - step) * (d_log_a - d_log_b)
            gradient += d_log_step * np.sign(s) / (TAPER_FRACTION * kernel.support_radius)
    return float(gradient)


def collapse_center_cdf(
    wf: WaveFunction, a: float, cache: Optional[CenterDensityCache] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Bin edges and CDF of the collapse-centre density on the grid.

    Each grid sample owns a bin of width dx; the density is piecewise constant
    across bins, so inverse-CDF sampling interpolates linearly inside a bin.
    """
    if not a > 0:
        raise ValidationError(f"collapse width must be positive (got {a})")
    cache = cache if cache is not None else get_density_cache()
    cached = cache.get(wf, a)
    if cached is not None:
        return cached

    grid = wf.grid
    dx = grid.spacing
    offsets = dx * np.arange(-(grid.n_points - 1), grid.n_points)
    smeared = signal.fftconvolve(
        wf.probability_density(), np.exp(-(offsets**2) / a**2), mode="same"
    )
    # fft round-off can leave tiny negatives far from the state
    smeared = np.clip(smeared, 0.0, None)
    x = grid.points()
    edges = np.append(x - 0.5 * dx, x[-1] + 0.5 * dx)
    cdf = np.concatenate(([0.0], np.cumsum(smeared)))
    if not cdf[-1] > 0:
        raise AnnihilationError("collapse-centre density vanishes on the grid")
    cdf /= cdf[-1]
    cache.set(wf, a, edges, cdf)
    return edges, cdf


def sample_collapse_centers(
    wf: WaveFunction,
    a: float,
    rng: np.random.Generator,
    size: int,
    cache: Optional[CenterDensityCache] = None,
) -> np.ndarray:
    edges, cdf = collapse_center_cdf(wf, a, cache)
    return np.interp(rng.random(size), cdf, edges)


def sample_collapse_center(
    wf: WaveFunction,
    a: float,
    rng: np.random.Generator,
    cache: Optional[CenterDensityCache] = None,
) -> float:
    """One collapse centre drawn by inverse CDF from the smeared density."""
    return float(sample_collapse_centers(wf, a, rng, 1, cache)[0])


def apply_collapse(wf: WaveFunction, kernel: CollapseKernel) -> CollapseOutcome:
    """
    Multiply by c(x) and renormalise.

    pre_weight is ||c psi||^2 / ||psi||^2, so it is the hit's weight for a
    normalised input and never exceeds 1.
    """
    density_before = float(np.sum(wf.probability_density()))
    collapsed = kernel_values(kernel, wf.x) * wf.amplitudes
    density_after = float(np.sum(np.abs(collapsed) ** 2))
    norm_after = density_after * wf.grid.spacing
    if not norm_after > ANNIHILATION_THRESHOLD or density_before == 0:
        raise AnnihilationError(
            f"collapse at {kernel.center:.6g} leaves norm^2 {norm_after:.3g}"
        )
    pre_weight = min(1.0, density_after / density_before)
    post_state = WaveFunction(
        wf.grid,
        collapsed / np.sqrt(norm_after),
        normalized=True,
        warnings=wf.warnings,
    )
    logger.debug(
        "collapse_applied",
        kind=kernel.kind.value,
        center=kernel.center,
        width=kernel.width,
        pre_weight=pre_weight,
    )
    return CollapseOutcome(center=kernel.center, pre_weight=pre_weight, post_state=post_state)


def grw_hit(
    wf: WaveFunction,
    a: float,
    rng: np.random.Generator,
    cache: Optional[CenterDensityCache] = None,
) -> CollapseOutcome:
    """A standard GRW hit: sample a centre, then apply the Gaussian kernel there."""
    center = sample_collapse_center(wf, a, rng, cache)
    return apply_collapse(wf, CollapseKernel.gaussian(a, center))
