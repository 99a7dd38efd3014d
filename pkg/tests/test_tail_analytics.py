"""Tests for the closed-form tail laws and their grid checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.collapse import kernel_values
from src.errors import (
    GridDomainError,
    ResolutionError,
    UnmeasurableTailError,
    ValidationError,
    ValidityError,
)
from src.models import CollapseKernel, CompoundSpec, Grid1D
from src.tail_analytics import (
    KICK_CALIBRATION,
    PRINTED_SUPPRESSION_EXPONENT_CONSTANT,
    SUPPRESSION_EXPONENT_CONSTANT,
    calibrate_kick_constant,
    compound_relative_state,
    excitation_threshold,
    exponent_constant_by_quadrature,
    kick_at_threshold_ratio,
    kick_expectation_linear,
    kick_expectation_numeric,
    measure_tail_displacement,
    predict_two_peak_approx,
    predict_two_peak_collapse,
    sweep_two_peak,
)


class TestPredictTwoPeakCollapse:
    def test_displacement_example(self):
        prediction = predict_two_peak_collapse(1.0, 10.0, 5.0)
        assert prediction.x0_prime == pytest.approx(5.0 * 100.0 / 101.0)
        assert prediction.x0_prime == pytest.approx(4.9505, abs=1e-4)
        assert prediction.a_prime == pytest.approx(np.sqrt(101.0))

    def test_width_law(self):
        prediction = predict_two_peak_collapse(1.0, 10.0, 5.0)
        assert 1.0 / prediction.w_prime**2 == pytest.approx(1.0 / 100.0 + 1.0)

    def test_suppression_uses_completed_square(self):
        prediction = predict_two_peak_collapse(1.0, 10.0, 20.0)
        assert prediction.exponent_constant == SUPPRESSION_EXPONENT_CONSTANT
        assert prediction.suppression == pytest.approx(np.exp(-0.5 * 400.0 / 101.0))

    def test_zero_offset(self):
        prediction = predict_two_peak_collapse(1.0, 10.0, 0.0)
        assert prediction.x0_prime == 0.0
        assert prediction.suppression == 1.0
        assert prediction.displacement_fraction == 0.0

    def test_negative_offset_is_mirrored(self):
        right = predict_two_peak_collapse(1.0, 10.0, 5.0)
        left = predict_two_peak_collapse(1.0, 10.0, -5.0)
        assert left.x0_prime == -right.x0_prime
        assert left.suppression == right.suppression

    @pytest.mark.parametrize("w, a", [(0.0, 1.0), (1.0, -1.0)])
    def test_invalid_widths(self, w, a):
        with pytest.raises(ValidationError):
            predict_two_peak_collapse(w, a, 1.0)

    @settings(max_examples=50, deadline=None)
    @given(
        w=st.floats(min_value=1e-3, max_value=1e3),
        a=st.floats(min_value=1e-3, max_value=1e3),
        x0=st.floats(min_value=-1e3, max_value=1e3),
    )
    def test_tail_moves_toward_centre(self, w, a, x0):
        prediction = predict_two_peak_collapse(w, a, x0)
        assert abs(prediction.x0_prime) <= abs(x0)
        assert prediction.w_prime < w
        assert 0.0 <= prediction.suppression <= 1.0


class TestPredictTwoPeakApprox:
    def test_leading_order(self):
        approx = predict_two_peak_approx(0.5, 10.0, 10.0)
        assert approx.x0_prime == pytest.approx(10.0 * (1 - 0.0025))
        assert approx.w_prime == 0.5

    def test_error_bound(self):
        for w in (0.5, 1.0):
            exact = predict_two_peak_collapse(w, 10.0, 30.0)
            approx = predict_two_peak_approx(w, 10.0, 30.0)
            assert abs(exact.x0_prime - approx.x0_prime) <= 2 * (w / 10.0) ** 4 * 30.0

    def test_outside_validity(self):
        with pytest.raises(ValidityError):
            predict_two_peak_approx(4.0, 10.0, 5.0)


class TestExponentConstant:
    @pytest.mark.parametrize("w, a, x0", [(1.0, 10.0, 5.0), (0.5, 10.0, 30.0), (2.0, 3.0, -4.0)])
    def test_quadrature_recovers_one_half(self, w, a, x0):
        assert exponent_constant_by_quadrature(w, a, x0) == pytest.approx(0.5, rel=1e-9)

    def test_follows_the_sampled_kernel(self, mocker):
        # squaring the kernel halves a^2 in the integrand: c = 0.5 (a^2 + w^2) / (a^2/2 + w^2)
        original = kernel_values
        mocker.patch(
            "src.tail_analytics.kernel_values",
            side_effect=lambda kernel, x: original(kernel, x) ** 2,
        )
        assert exponent_constant_by_quadrature(1.0, 10.0, 5.0) == pytest.approx(
            0.5 * 101.0 / 51.0, rel=1e-9
        )

    def test_printed_constant_differs_by_two(self):
        assert PRINTED_SUPPRESSION_EXPONENT_CONSTANT / SUPPRESSION_EXPONENT_CONSTANT == 2.0

    def test_zero_offset(self):
        with pytest.raises(ValidationError):
            exponent_constant_by_quadrature(1.0, 10.0, 0.0)


class TestMeasureTailDisplacement:
    def setup_method(self):
        self.grid = Grid1D(-10.0, 30.0, 4001)

    def test_matches_closed_form(self):
        exact = predict_two_peak_collapse(1.0, 10.0, 5.0)
        measured = measure_tail_displacement(1.0, 10.0, 5.0, self.grid)
        assert measured.x0_measured == pytest.approx(exact.x0_prime, rel=5e-3)
        assert measured.w_prime_measured == pytest.approx(exact.w_prime, rel=1e-2)
        assert measured.suppression_measured == pytest.approx(exact.suppression, rel=1e-2)
        assert measured.spacing == self.grid.spacing

    def test_coincident_peaks(self):
        measured = measure_tail_displacement(1.0, 10.0, 0.0, self.grid)
        assert measured.suppression_measured == 1.0
        assert abs(measured.x0_measured) <= self.grid.spacing

    def test_coarse_grid(self):
        with pytest.raises(ResolutionError):
            measure_tail_displacement(1.0, 10.0, 5.0, Grid1D(-10.0, 30.0, 101))

    def test_grid_too_small(self):
        with pytest.raises(GridDomainError):
            measure_tail_displacement(1.0, 10.0, 5.0, Grid1D(-2.0, 8.0, 1001))

    def test_tail_too_small(self):
        grid = Grid1D(-10.0, 110.0, 12001)
        with pytest.raises(UnmeasurableTailError):
            measure_tail_displacement(1.0, 10.0, 100.0, grid)


@pytest.mark.slow
class TestSweep:
    def test_sweep_within_tolerances(self):
        points = sweep_two_peak(a=10.0)
        assert len(points) == 10
        for point in points:
            assert point.displacement_error <= (
                point.measurement.spacing if point.x0 == 0 else 5e-3
            )
            assert point.measurement.w_prime_measured == pytest.approx(
                point.prediction.w_prime, rel=1e-2
            )
            assert point.suppression_error <= 1e-2


class TestKick:
    def setup_method(self):
        self.compound = CompoundSpec(com_width=1.0, internal_rms=1.0, particle_width=1.0)
        self.relative = compound_relative_state(self.compound)

    def test_relative_state_has_requested_rms(self):
        x = self.relative.x
        rho = self.relative.probability_density()
        assert np.sum(x**2 * rho) / np.sum(rho) == pytest.approx(1.0, rel=1e-9)

    def test_numeric_matches_closed_form(self):
        # integrating out R leaves <r> = d w_amp^2 / (a^2 + sigma^2 + w_amp^2), w_amp^2 = 2 rms^2
        kernel = CollapseKernel.gaussian(10.0, 2.0)
        numeric = kick_expectation_numeric(self.relative, 1.0, kernel)
        assert numeric == pytest.approx(2.0 * 2.0 / (100.0 + 1.0 + 2.0), rel=1e-6)

    @pytest.mark.parametrize("d", [1.0, -3.0, 10.0])
    def test_linear_within_ten_percent(self, d):
        kernel = CollapseKernel.gaussian(10.0, d)
        numeric = kick_expectation_numeric(self.relative, 1.0, kernel)
        linear = kick_expectation_linear(self.compound, kernel, d)
        assert linear.mean_relative_displacement == pytest.approx(numeric, rel=0.1)
        assert np.sign(numeric) == np.sign(d)

    def test_linear_fields(self):
        kernel = CollapseKernel.gaussian(10.0, 2.0)
        linear = kick_expectation_linear(self.compound, kernel, 2.0)
        assert linear.log_gradient == pytest.approx(0.02)
        assert linear.mean_relative_displacement == pytest.approx(KICK_CALIBRATION * 0.02)
        assert linear.paper_estimate == pytest.approx(0.02)

    def test_calibration_constant(self):
        assert calibrate_kick_constant(self.compound, 100.0, 10.0) == pytest.approx(2.0, rel=1e-3)

    def test_calibration_needs_distance(self):
        with pytest.raises(ValidationError):
            calibrate_kick_constant(self.compound, 10.0, 0.0)

    def test_kick_at_threshold(self):
        assert kick_at_threshold_ratio(self.compound, 10.0) == pytest.approx(KICK_CALIBRATION)


class TestExcitationThreshold:
    def test_atomic_and_nuclear(self):
        assert excitation_threshold(1e-10, 1e-7) == pytest.approx(1e-4, rel=1e-12)
        assert excitation_threshold(1e-14, 1e-7) == pytest.approx(1.0, rel=1e-12)

    def test_invalid(self):
        with pytest.raises(ValidationError):
            excitation_threshold(0.0, 1e-7)
