"""
Configuration loader with precedence handling.

Scenario files are flat `key = value` text with `#` comments. Settings are
resolved with the following precedence:
1. CLI flags (highest priority)
2. Environment variables (GRWTAILS_SEED, GRWTAILS_OUTPUT, GRWTAILS_FORMAT,
   GRWTAILS_WORKERS)
3. The scenario file
4. Scenario defaults, then built-in defaults (lowest priority)

Every violation is collected, with its line and field, before a single
ConfigurationError is raised.
"""

import math
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from ..config_types import (
    DEFAULT_COLLAPSE_WIDTH,
    DEFAULT_RATE_PER_NUCLEON,
    DEFAULT_WORKERS,
    OutputFormat,
    Scenario,
    ScenarioConfig,
    Units,
)
from ..errors import ConfigurationError, ConfigViolation, format_error_message
from ..logging_config import get_logger
from ..models.grid import MIN_GRID_POINTS
from ..scenarios.base import ScenarioDefinition
from ..scenarios.factory import ScenarioFactory, available_scenarios, definition_for

logger = get_logger(__name__)

# Type for configuration values
ConfigValue = Union[str, int, float, None]

KEY_PATTERN = re.compile(r"[a-z_][a-z0-9_]*\Z")
SEED_LIMIT = 1 << 64

SETTING_KEYS = frozenset({"scenario", "seed", "output_path", "format", "units", "workers"})
NUMERIC_KEYS = frozenset(
    {
        "w",
        "a",
        "x0",
        "d",
        "n_nucleons",
        "mass",
        "lambda",
        "energy_mev",
        "duration",
        "grid_points",
        "x_min",
        "x_max",
        "cutoff_multiple",
        "repetitions",
        "com_width",
        "absorbed_fraction",
        "separation",
        "draws",
        "heavy_weight",
        "dt",
        "particle_mass",
        "taper",
    }
)

# Built-in defaults, applied to the keys a scenario accepts
DEFAULTS: Dict[str, float] = {
    "a": DEFAULT_COLLAPSE_WIDTH,
    "lambda": DEFAULT_RATE_PER_NUCLEON,
    "energy_mev": 1.0,
    "absorbed_fraction": 1.0,
    "cutoff_multiple": 10.0,
    "repetitions": 1,
}

# Environment variable mappings
ENV_MAPPINGS = {
    "GRWTAILS_SEED": "seed",
    "GRWTAILS_OUTPUT": "output_path",
    "GRWTAILS_FORMAT": "format",
    "GRWTAILS_WORKERS": "workers",
}


@dataclass(frozen=True)
class Entry:
    """A raw value and where it came from (line None for CLI and environment)."""

    value: str
    line: Optional[int]
    source: str = "file"


Reporter = Callable[[Optional[Entry], str, str], None]


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        number = float(text)
        if not number.is_integer():
            raise ValueError(f"`{text}` is not a whole number") from None
        return int(number)


class ConfigurationLoader:
    """Loads scenario configuration with proper precedence handling."""

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        """
        Initialize the configuration loader.

        Args:
            environ: Environment to read overrides from. If None, uses os.environ.
        """
        self.environ = os.environ if environ is None else environ
        self.factory = ScenarioFactory()

    def read_entries(
        self, text: Union[str, bytes]
    ) -> Tuple[Dict[str, Entry], List[ConfigViolation]]:
        """Split the file into key/value entries; syntax problems become violations."""
        violations: List[ConfigViolation] = []
        entries: Dict[str, Entry] = {}
        if isinstance(text, (bytes, bytearray)):
            try:
                text = bytes(text).decode("utf-8-sig")
            except UnicodeDecodeError as e:
                return entries, [ConfigViolation(None, None, f"not valid UTF-8 ({e.reason})")]

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                violations.append(ConfigViolation(number, None, "expected `key = value`"))
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if not KEY_PATTERN.match(key):
                violations.append(
                    ConfigViolation(number, key or None, "keys are lower-case identifiers")
                )
                continue
            if not value:
                violations.append(ConfigViolation(number, key, "missing value"))
                continue
            if key in entries:
                violations.append(
                    ConfigViolation(
                        number, key, f"duplicate key (first set on line {entries[key].line})"
                    )
                )
                continue
            entries[key] = Entry(value, number)
        return entries, violations

    def get_value(
        self, key: str, entries: Mapping[str, Entry], cli_value: ConfigValue = None
    ) -> Optional[Entry]:
        """
        Get a setting with proper precedence.

        Args:
            key: Configuration key
            entries: Entries read from the scenario file
            cli_value: Value from CLI (highest priority)
        """
        # 1. CLI flag (highest priority)
        if cli_value is not None:
            return Entry(str(cli_value), None, "cli")

        # 2. Environment variable
        for env_var, config_key in ENV_MAPPINGS.items():
            if config_key == key and self.environ.get(env_var):
                return Entry(self.environ[env_var], None, env_var)

        # 3. Scenario file
        return entries.get(key)

    def load(self, text: Union[str, bytes], **cli_args: ConfigValue) -> ScenarioConfig:
        """
        Parse and validate a scenario configuration.

        Args:
            text: Scenario file contents
            **cli_args: seed, output_path, format, workers from the command line

        Raises:
            ConfigurationError: listing every violation found
        """
        entries, violations = self.read_entries(text)

        def violation(entry: Optional[Entry], field: str, message: str) -> None:
            if entry is not None and entry.source not in ("file", "cli"):
                message = f"{message} (from {entry.source})"
            violations.append(
                ConfigViolation(entry.line if entry else None, field, message)
            )

        scenario = self._scenario(entries.get("scenario"), violation)
        seed = self._seed(self.get_value("seed", entries, cli_args.get("seed")), violation)
        output_format = self._choice(
            "format", OutputFormat, self.get_value("format", entries, cli_args.get("format")), violation
        )
        units = self._choice("units", Units, entries.get("units"), violation)
        workers = self._workers(
            self.get_value("workers", entries, cli_args.get("workers")), violation
        )
        output = self.get_value("output_path", entries, cli_args.get("output_path"))

        numbers = self._numbers(entries, violation)
        definition = definition_for(scenario) if scenario is not None else None
        if definition is not None:
            self._check_against(definition, entries, numbers, units or Units.SI, violation)

        if violations or scenario is None or seed is None or definition is None:
            raise ConfigurationError(violations=violations)

        resolved_units = units or Units.SI
        parameters: Dict[str, float] = {
            key: float(value)
            for key, value in DEFAULTS.items()
            if key in definition.accepted_parameters
        }
        parameters.update({k: float(v) for k, v in definition.defaults.items()})
        parameters.update(numbers)
        runner = self.factory.create_runner(scenario)
        try:
            parameters = runner.resolve_parameters(parameters, resolved_units)
        except (ArithmeticError, ValueError) as e:
            raise ConfigurationError(
                violations=[ConfigViolation(None, None, f"cannot derive parameters: {e}")]
            ) from e

        config = ScenarioConfig(
            scenario=scenario,
            seed=seed,
            parameters=parameters,
            output_path=output.value if output else None,
            format=output_format or OutputFormat.JSON,
            units=resolved_units,
            workers=workers or DEFAULT_WORKERS,
        )
        logger.debug("config_loaded", scenario=scenario.value, seed=seed)
        return config

    def load_file(self, path: Union[str, Path], **cli_args: ConfigValue) -> ScenarioConfig:
        config_path = Path(path)
        try:
            data = config_path.read_bytes()
        except FileNotFoundError:
            raise ConfigurationError(
                format_error_message("config_not_found", path=config_path)
            ) from None
        except OSError as e:
            raise ConfigurationError(f"Cannot read {config_path}: {e}") from e
        return self.load(data, **cli_args)

    @staticmethod
    def _scenario(entry: Optional[Entry], violation: Reporter) -> Optional[Scenario]:
        if entry is None:
            violation(None, "scenario", "missing required setting")
            return None
        try:
            return Scenario(entry.value)
        except ValueError:
            violation(
                entry,
                "scenario",
                format_error_message(
                    "unknown_scenario", name=entry.value, available=", ".join(available_scenarios())
                ).replace("\n", "; "),
            )
            return None

    @staticmethod
    def _seed(entry: Optional[Entry], violation: Reporter) -> Optional[int]:
        if entry is None:
            violation(None, "seed", "missing required setting")
            return None
        try:
            seed = _parse_int(entry.value)
        except (ValueError, OverflowError):
            violation(entry, "seed", f"`{entry.value}` is not an integer")
            return None
        if not 0 <= seed < SEED_LIMIT:
            violation(entry, "seed", "must be a 64-bit unsigned integer")
            return None
        return seed

    @staticmethod
    def _choice(field: str, enum_type, entry: Optional[Entry], violation: Reporter):
        if entry is None:
            return None
        try:
            return enum_type(entry.value.lower())
        except ValueError:
            allowed = ", ".join(member.value for member in enum_type)
            violation(entry, field, f"`{entry.value}` is not one of: {allowed}")
            return None

    @staticmethod
    def _workers(entry: Optional[Entry], violation: Reporter) -> Optional[int]:
        if entry is None:
            return None
        try:
            workers = _parse_int(entry.value)
        except (ValueError, OverflowError):
            violation(entry, "workers", f"`{entry.value}` is not an integer")
            return None
        if workers < 1:
            violation(entry, "workers", "must be at least 1")
            return None
        return workers

    @staticmethod
    def _numbers(entries: Mapping[str, Entry], violation: Reporter) -> Dict[str, float]:
        numbers: Dict[str, float] = {}
        for key, entry in entries.items():
            if key in SETTING_KEYS:
                continue
            if key not in NUMERIC_KEYS:
                violation(entry, key, "unknown key")
                continue
            try:
                number = float(entry.value)
            except (ValueError, OverflowError):
                violation(entry, key, f"`{entry.value}` is not a number")
                continue
            if not math.isfinite(number):
                violation(entry, key, "must be finite")
                continue
            numbers[key] = number
        return numbers

    @staticmethod
    def _check_against(
        definition: ScenarioDefinition,
        entries: Mapping[str, Entry],
        numbers: Mapping[str, float],
        units: Units,
        violation: Reporter,
    ) -> None:
        name = definition.scenario.value
        if units not in definition.units:
            violation(entries.get("units"), "units", f"{name} runs in {definition.units[0].value} units only")
        for key in definition.required_parameters:
            if key not in entries:
                violation(None, key, f"required by {name}")
        for key, value in numbers.items():
            entry = entries[key]
            if key not in definition.accepted_parameters:
                violation(entry, key, f"not used by {name}")
            if key in definition.flag_parameters:
                if value not in (0.0, 1.0):
                    violation(entry, key, "must be 0 or 1")
            elif key in definition.fraction_parameters:
                if not 0.0 <= value <= 1.0:
                    violation(entry, key, "must lie in [0, 1]")
            elif key not in definition.signed_parameters and not value > 0:
                violation(entry, key, f"must be positive (got {entry.value})")
            if key in definition.integer_parameters and not value.is_integer():
                violation(entry, key, "must be a whole number")
            if key == "grid_points" and value < MIN_GRID_POINTS:
                violation(entry, key, f"must be at least {MIN_GRID_POINTS}")
        if "x_min" in numbers and "x_max" in numbers and not numbers["x_min"] < numbers["x_max"]:
            violation(entries["x_max"], "x_max", "must exceed x_min")


def parse_config(text: Union[str, bytes], **cli_args: ConfigValue) -> ScenarioConfig:
    """Parse a scenario file with CLI overrides only; the environment is not consulted."""
    return ConfigurationLoader(environ={}).load(text, **cli_args)
