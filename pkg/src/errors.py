"""
Centralized error taxonomy for grwtails.

Every exception raised on purpose by the package derives from GrwTailsError
and carries the process exit code the CLI should use for it:

    0  success
    1  validation / configuration / numerical error
    2  a scenario ran but at least one record is FAIL
    3  I/O error while writing a report
"""

from dataclasses import dataclass
from typing import Any, Sequence


class GrwTailsError(Exception):
    """Base exception for all grwtails errors."""

    exit_code: int = 1

    def __init__(self, message: str = ""):
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return self.message or self.__class__.__name__


@dataclass(frozen=True, slots=True)
class ConfigViolation:
    """One problem found while parsing a scenario configuration."""

    line: int | None
    field: str | None
    message: str

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"`{self.field}`")
        prefix = ", ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message


class ConfigurationError(GrwTailsError):
    """Raised when a scenario configuration cannot be parsed or validated."""

    exit_code = 1

    def __init__(
        self, message: str = "", violations: Sequence[ConfigViolation] = ()
    ):
        self.violations = tuple(violations)
        if not message and self.violations:
            message = f"{len(self.violations)} problem(s) in configuration"
        super().__init__(message)

    def __str__(self) -> str:
        """Return user-friendly error message."""
        lines = [f"Configuration Error: {self.message}"]
        lines.extend(f"  - {violation}" for violation in self.violations)
        return "\n".join(lines)


class ValidationError(GrwTailsError):
    """Raised when a domain value violates its invariants."""

    exit_code = 1

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return f"Validation Error: {self.message}"


class ResolutionError(ValidationError):
    """Raised when a Gaussian peak is too narrow for the grid (width < 3 dx)."""


class GridDomainError(ValidationError):
    """Raised when a peak centre lies outside the grid window."""


class ValidityError(ValidationError):
    """Raised when an approximation is used outside its validity domain."""


class NumericalError(GrwTailsError):
    """Raised when a numerical operation has no meaningful result."""

    exit_code = 1

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return f"Numerical Error: {self.message}"


class EmptyRegionError(NumericalError):
    """Raised when a region carries no probability mass."""


class SupportError(NumericalError):
    """Raised when a kernel quantity is requested where the kernel vanishes."""


class AnnihilationError(NumericalError):
    """Raised when a collapse leaves (numerically) nothing of the state."""


class UnmeasurableTailError(NumericalError):
    """Raised when the tail peak is too small to be fitted."""


class StreamCapacityError(NumericalError):
    """Raised when an event stream would exceed the memory guard."""


class ScenarioExecutionError(GrwTailsError):
    """Raised when a module error interrupts a scenario run."""

    exit_code = 1

    def __init__(self, scenario: str, message: str = ""):
        self.scenario = scenario
        super().__init__(message)

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return f"Scenario Error [{self.scenario}]: {self.message}"


class ScenarioFailure(GrwTailsError):
    """Raised when a finished run contains FAIL records."""

    exit_code = 2

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return f"Scenario Failure: {self.message}"


class ReportWriteError(GrwTailsError):
    """Raised when a report or side file cannot be written."""

    exit_code = 3

    def __str__(self) -> str:
        """Return user-friendly error message."""
        return f"Report Write Error: {self.message}"


# Error messages for common scenarios
ERROR_MESSAGES = {
    "config_not_found": (
        "Configuration file not found: {path}\n"
        "Run `grwtails scenarios` to see the parameters each scenario needs."
    ),
    "unknown_scenario": (
        "Unknown scenario: {name}\n" "Available scenarios: {available}"
    ),
    "unwritable_path": (
        "Cannot write to: {path}\n" "Check that the directory exists and is writable."
    ),
    "stream_guard": (
        "Expected {expected:.3g} events exceeds the stream limit of {limit:.3g}.\n"
        "Use the count or expected event mode for long windows."
    ),
    "unresolvable_peak": (
        "Peak width {width:.3g} is below 3 grid spacings ({minimum:.3g}).\n"
        "Increase grid_points or narrow the grid window."
    ),
}


def format_error_message(error_key: str, **kwargs: Any) -> str:
    """
    Format an error message with the given parameters.

    Args:
        error_key: Key from ERROR_MESSAGES
        **kwargs: Parameters to format the message

    Returns:
        Formatted error message
    """
    template = ERROR_MESSAGES.get(error_key, f"Unknown error: {error_key}")
    try:
        return template.format(**kwargs)
    except (KeyError, ValueError):
        return f"{template} (formatting error with params: {kwargs})"
