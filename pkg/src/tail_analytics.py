"""
Closed-form tail predictions and their checks against the grid engine.

Two-peak state: psi = exp(-x^2/2w^2) + exp(-(x - x0)^2/2w^2), hit by a
Gaussian kernel centred on the first peak. Completing the square on the
tail's product gives a peak at x0 a^2/(a^2 + w^2) of width w' with
1/w'^2 = 1/a^2 + 1/w^2 and amplitude exp(-x0^2 / 2a'^2), a'^2 = a^2 + w^2.
The amplitude exponent therefore carries a constant 1/2; the printed closed
form exp(-x0^2/a'^2) is kept alongside for comparison.

Compound kick: a bound pair in 1D, x = R + r, with independent Gaussian
centre-of-mass and relative states. Linearising c^2 about the compound gives
<r> = kappa * (c'/c) * <r^2> with kappa = 2 in one dimension.
"""

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .collapse import apply_collapse, kernel_log_gradient, kernel_values, log_kernel_values
from .errors import (
    AnnihilationError,
    GridDomainError,
    ResolutionError,
    UnmeasurableTailError,
    ValidationError,
    ValidityError,
)
from .logging_config import get_logger
from .models import (
    CollapseKernel,
    CompoundSpec,
    GaussianPeak,
    Grid1D,
    KickPrediction,
    SweepPoint,
    TailMeasurement,
    TwoPeakPrediction,
    WaveFunction,
)
from .wavefunction import find_peaks, make_gaussian_superposition

logger = get_logger(__name__)

SUPPRESSION_EXPONENT_CONSTANT = 0.5
PRINTED_SUPPRESSION_EXPONENT_CONSTANT = 1.0
KICK_CALIBRATION = 2.0
APPROX_VALIDITY_RATIO = 1.0 / 3.0
MIN_MEASURABLE_SUPPRESSION = 1e-12
PEAK_SEARCH_HEIGHT = 1e-13
MEASURE_SAMPLES_PER_WIDTH = 10.0
MEASURE_HALF_SPAN = 5.0  # widths of margin the grid must leave around the state
COM_GRID_POINTS = 401
COM_HALF_SPAN = 8.0

SWEEP_WIDTH_RATIOS = (0.05, 0.1)
SWEEP_OFFSET_RATIOS = (0.5, 1.0, 2.0, 3.0)
SWEEP_EDGE_CASES = ((0.1, 0.0), (0.05, 4.0))  # (w/a, x0/a)
SWEEP_SAMPLES_PER_WIDTH = 20.0


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ValidationError(f"{name} must be positive (got {value})")


def predict_two_peak_collapse(w: float, a: float, x0: float) -> TwoPeakPrediction:
    """Exact post-collapse tail parameters for a kernel centred on the dominant peak."""
    _require_positive(w=w, a=a)
    a_prime_sq = a**2 + w**2
    return TwoPeakPrediction(
        w_prime=a * w / np.sqrt(a_prime_sq),
        x0_prime=x0 * a**2 / a_prime_sq,
        a_prime=float(np.sqrt(a_prime_sq)),
        suppression=float(np.exp(-SUPPRESSION_EXPONENT_CONSTANT * x0**2 / a_prime_sq)),
        exponent_constant=SUPPRESSION_EXPONENT_CONSTANT,
        x0=x0,
    )


def predict_two_peak_approx(w: float, a: float, x0: float) -> TwoPeakPrediction:
    """Leading-order forms for w << a: x0' = x0 (1 - w^2/a^2), w' = w, a' = a."""
    _require_positive(w=w, a=a)
    if w >= APPROX_VALIDITY_RATIO * a:
        raise ValidityError(
            f"narrow-peak approximation needs w < a/3 (got w = {w:.6g}, a = {a:.6g})"
        )
    return TwoPeakPrediction(
        w_prime=w,
        x0_prime=x0 * (1.0 - w**2 / a**2),
        a_prime=a,
        suppression=float(np.exp(-SUPPRESSION_EXPONENT_CONSTANT * x0**2 / a**2)),
        exponent_constant=SUPPRESSION_EXPONENT_CONSTANT,
        x0=x0,
    )


def exponent_constant_by_quadrature(
    w: float, a: float, x0: float, n_points: int = 8193
) -> float:
    """
    Recover c in exp(-c x0^2 / a'^2) by integrating |c psi|^2 for each peak on
    a grid. Both post-hit peaks have width w', so the tail/dominant amplitude
    ratio is the square root of their mass ratio.
    """
    _require_positive(w=w, a=a)
    if x0 == 0:
        raise ValidationError("exponent constant is undefined for x0 = 0")
    half_span = MEASURE_HALF_SPAN * 2.0 * w
    x = np.linspace(min(0.0, x0) - half_span, max(0.0, x0) + half_span, n_points)
    c = kernel_values(CollapseKernel.gaussian(a), x)
    dx = x[1] - x[0]
    dominant = np.sum(np.abs(c * GaussianPeak(0.0, w).evaluate(x)) ** 2) * dx
    tail = np.sum(np.abs(c * GaussianPeak(x0, w).evaluate(x)) ** 2) * dx
    a_prime_sq = a**2 + w**2
    return float(-0.5 * np.log(tail / dominant) * a_prime_sq / x0**2)


def _check_measurement_grid(w: float, x0: float, grid: Grid1D) -> None:
    if grid.spacing > w / MEASURE_SAMPLES_PER_WIDTH:
        raise ResolutionError(
            f"grid spacing {grid.spacing:.6g} does not resolve w = {w:.6g} "
            f"(need <= w/{MEASURE_SAMPLES_PER_WIDTH:g})"
        )
    lo = min(0.0, x0) - MEASURE_HALF_SPAN * w
    hi = max(0.0, x0) + MEASURE_HALF_SPAN * w
    if not (grid.contains(lo) and grid.contains(hi)):
        raise GridDomainError(
            f"grid [{grid.x_min:.6g}, {grid.x_max:.6g}] must contain [{lo:.6g}, {hi:.6g}]"
        )


def measure_tail_displacement(
    w: float, a: float, x0: float, grid: Grid1D
) -> TailMeasurement:
    """
    Build the equal-weight two-peak state, hit it with a Gaussian kernel at 0
    and fit the surviving peaks.

    The dominant peak is the fitted peak nearest the kernel centre; the tail is
    the heaviest of the others. A state whose peaks coincide (x0 within one
    grid step of 0) has no separate tail and reports suppression 1.
    """
    _require_positive(w=w, a=a)
    _check_measurement_grid(w, x0, grid)
    state = make_gaussian_superposition(
        grid, [GaussianPeak(0.0, w), GaussianPeak(x0, w)]
    )
    outcome = apply_collapse(state, CollapseKernel.gaussian(a, 0.0))
    peaks = find_peaks(outcome.post_state, PEAK_SEARCH_HEIGHT)
    if not peaks:
        raise UnmeasurableTailError("no peak survives the collapse")

    dominant = min(peaks, key=lambda p: abs(p.center))
    others = [p for p in peaks if p is not dominant]
    if not others:
        if abs(x0) <= grid.spacing:
            return TailMeasurement(dominant.center, 1.0, dominant.width, grid.spacing)
        raise UnmeasurableTailError(
            f"tail peak of the x0 = {x0:.6g} state fell below the fit threshold"
        )
    tail = max(others, key=lambda p: abs(p.weight))
    suppression = abs(tail.weight) / abs(dominant.weight)
    if suppression < MIN_MEASURABLE_SUPPRESSION:
        raise UnmeasurableTailError(
            f"tail suppression {suppression:.3g} is below {MIN_MEASURABLE_SUPPRESSION:g}"
        )
    logger.debug(
        "tail_measured", w=w, a=a, x0=x0, x0_measured=tail.center, suppression=suppression
    )
    return TailMeasurement(
        x0_measured=tail.center,
        suppression_measured=suppression,
        w_prime_measured=tail.width,
        spacing=grid.spacing,
    )


def _sweep_grid(w: float, x0: float, samples_per_width: float) -> Grid1D:
    margin = 2.0 * MEASURE_HALF_SPAN * w
    return Grid1D.covering(
        min(0.0, x0) - margin, max(0.0, x0) + margin, w / samples_per_width
    )


def sweep_two_peak(
    a: float = 10.0,
    width_ratios: Sequence[float] = SWEEP_WIDTH_RATIOS,
    offset_ratios: Sequence[float] = SWEEP_OFFSET_RATIOS,
    edge_cases: Iterable[Tuple[float, float]] = SWEEP_EDGE_CASES,
    samples_per_width: float = SWEEP_SAMPLES_PER_WIDTH,
) -> Tuple[SweepPoint, ...]:
    """Closed form against the grid over a (w/a, x0/a) sweep plus edge cases."""
    _require_positive(a=a)
    cases = [(wr, xr) for wr in width_ratios for xr in offset_ratios]
    cases.extend(edge_cases)
    points = []
    for width_ratio, offset_ratio in cases:
        w, x0 = width_ratio * a, offset_ratio * a
        grid = _sweep_grid(w, x0, samples_per_width)
        points.append(
            SweepPoint(
                w=w,
                a=a,
                x0=x0,
                prediction=predict_two_peak_collapse(w, a, x0),
                measurement=measure_tail_displacement(w, a, x0, grid),
            )
        )
    return tuple(points)


def compound_relative_state(compound: CompoundSpec, n_points: int = 1025) -> WaveFunction:
    """Zero-mean Gaussian relative state with <r^2> = internal_rms^2."""
    width = np.sqrt(2.0) * compound.internal_rms
    half_span = 10.0 * width
    grid = Grid1D(-half_span, half_span, n_points)
    return make_gaussian_superposition(grid, [GaussianPeak(0.0, width)])


def kick_expectation_numeric(
    relative_wf: WaveFunction,
    com_width: float,
    kernel: CollapseKernel,
    com_points: int = COM_GRID_POINTS,
) -> float:
    """
    <r> under c^2(R + r) |Phi(R)|^2 |chi(r)|^2 by quadrature on the R x r grid.

    The compound sits at the origin; |Phi(R)|^2 = exp(-R^2/com_width^2). The
    weights are formed in log space so that distant kernels do not underflow.
    """
    _require_positive(com_width=com_width)
    half_span = COM_HALF_SPAN * com_width
    com = np.linspace(-half_span, half_span, com_points)[:, None]
    r = relative_wf.x
    with np.errstate(divide="ignore"):
        log_relative = np.log(relative_wf.probability_density())
    log_weight = (
        2.0 * log_kernel_values(kernel, com + r[None, :])
        - com**2 / com_width**2
        + log_relative[None, :]
    )
    peak = float(np.max(log_weight))
    if not np.isfinite(peak):
        raise AnnihilationError(
            f"kernel at {kernel.center:.6g} leaves no weight on the compound"
        )
    marginal = np.exp(log_weight - peak).sum(axis=0)
    return float(np.sum(r * marginal) / np.sum(marginal))


def kick_expectation_linear(
    compound: CompoundSpec,
    kernel: CollapseKernel,
    collapse_distance: float,
    kappa: float = KICK_CALIBRATION,
) -> KickPrediction:
    """
    Linearised kick for a compound at distance collapse_distance from the
    kernel centre, measured to the compound's centre of mass. Positive
    distance puts the kernel centre on the +x side of the compound.
    """
    position = kernel.center - collapse_distance
    gradient = kernel_log_gradient(kernel, position)
    return KickPrediction(
        mean_relative_displacement=kappa * gradient * compound.internal_rms**2,
        log_gradient=gradient,
        paper_estimate=compound.particle_width**2 * gradient,
    )


def calibrate_kick_constant(
    compound: CompoundSpec,
    a: float,
    collapse_distance: float,
    n_points: int = 1025,
) -> float:
    """kappa = quadrature <r> / ((c'/c) <r^2>) for a Gaussian kernel."""
    _require_positive(a=a)
    if collapse_distance == 0:
        raise ValidationError("calibration needs a nonzero collapse distance")
    relative = compound_relative_state(compound, n_points)
    kernel = CollapseKernel.gaussian(a, collapse_distance)
    numeric = kick_expectation_numeric(relative, compound.com_width, kernel)
    gradient = kernel_log_gradient(kernel, 0.0)
    return numeric / (gradient * compound.internal_rms**2)


def excitation_threshold(w: float, a: float) -> float:
    """Distance d_c = a^2 / w at which |c'/c| reaches 1/w for the Gaussian kernel."""
    _require_positive(w=w, a=a)
    return a**2 / w


def kick_at_threshold_ratio(
    compound: CompoundSpec, a: float, kappa: Optional[float] = None
) -> float:
    """|linear kick| / w at d = excitation_threshold(w, a)."""
    threshold = excitation_threshold(compound.particle_width, a)
    kernel = CollapseKernel.gaussian(a, threshold)
    kick = kick_expectation_linear(
        compound, kernel, threshold, KICK_CALIBRATION if kappa is None else kappa
    )
    return abs(kick.mean_relative_displacement) / compound.particle_width
