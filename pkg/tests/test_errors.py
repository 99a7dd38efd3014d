"""Test error handling and error taxonomy."""

import pytest

from src.errors import (
    ERROR_MESSAGES,
    AnnihilationError,
    ConfigurationError,
    ConfigViolation,
    EmptyRegionError,
    GridDomainError,
    GrwTailsError,
    NumericalError,
    ReportWriteError,
    ResolutionError,
    ScenarioExecutionError,
    ScenarioFailure,
    StreamCapacityError,
    SupportError,
    UnmeasurableTailError,
    ValidationError,
    ValidityError,
    format_error_message,
)


class TestErrorTaxonomy:
    def test_base_error(self):
        error = GrwTailsError("Test error")
        assert str(error) == "Test error"
        assert error.exit_code == 1

    def test_base_error_without_message(self):
        assert str(GrwTailsError()) == "GrwTailsError"

    def test_specific_errors_exit_codes(self):
        errors_and_codes = [
            (ConfigurationError("config"), 1),
            (ValidationError("validation"), 1),
            (NumericalError("numbers"), 1),
            (ScenarioExecutionError("two-peak-collapse", "boom"), 1),
            (ScenarioFailure("1 record FAIL"), 2),
            (ReportWriteError("disk"), 3),
        ]

        for error, expected_code in errors_and_codes:
            assert error.exit_code == expected_code
            assert isinstance(error, GrwTailsError)

    @pytest.mark.parametrize(
        "error_class", [ResolutionError, GridDomainError, ValidityError]
    )
    def test_validation_subclasses(self, error_class):
        error = error_class("bad input")
        assert isinstance(error, ValidationError)
        assert "Validation Error: bad input" == str(error)

    @pytest.mark.parametrize(
        "error_class",
        [
            EmptyRegionError,
            SupportError,
            AnnihilationError,
            UnmeasurableTailError,
            StreamCapacityError,
        ],
    )
    def test_numerical_subclasses(self, error_class):
        error = error_class("no result")
        assert isinstance(error, NumericalError)
        assert str(error).startswith("Numerical Error:")

    def test_scenario_execution_error_names_scenario(self):
        error = ScenarioExecutionError("cat-decay", "stream too long")
        assert error.scenario == "cat-decay"
        assert str(error) == "Scenario Error [cat-decay]: stream too long"

    def test_report_write_error_message(self):
        assert str(ReportWriteError("cannot write")) == "Report Write Error: cannot write"


class TestConfigurationError:
    def test_collects_violations(self):
        violations = [
            ConfigViolation(3, "w", "must be positive (got -1)"),
            ConfigViolation(None, "seed", "missing required setting"),
        ]
        error = ConfigurationError(violations=violations)

        assert error.violations == tuple(violations)
        assert error.message == "2 problem(s) in configuration"
        text = str(error)
        assert "line 3, `w`: must be positive (got -1)" in text
        assert "`seed`: missing required setting" in text

    def test_plain_message(self):
        error = ConfigurationError("file missing")
        assert error.violations == ()
        assert str(error) == "Configuration Error: file missing"

    def test_violation_without_location(self):
        assert str(ConfigViolation(None, None, "not valid UTF-8")) == "not valid UTF-8"


class TestErrorMessages:
    def test_error_messages_exist(self):
        required_keys = [
            "config_not_found",
            "unknown_scenario",
            "unwritable_path",
            "stream_guard",
            "unresolvable_peak",
        ]

        for key in required_keys:
            assert key in ERROR_MESSAGES

    def test_format_error_message(self):
        message = format_error_message("config_not_found", path="/tmp/missing.cfg")
        assert "/tmp/missing.cfg" in message
        assert "grwtails scenarios" in message

    def test_stream_guard_advises_other_modes(self):
        message = format_error_message("stream_guard", expected=1e12, limit=1e9)
        assert "1e+12" in message
        assert "count" in message

    def test_format_unknown_error_key(self):
        message = format_error_message("unknown_key")
        assert message == "Unknown error: unknown_key"

    def test_format_error_missing_params(self):
        message = format_error_message("config_not_found")
        assert "formatting error" in message
