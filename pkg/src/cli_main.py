#!/usr/bin/env python3
"""
CLI main module.

This module is the command-line entry point of grwtails: it parses arguments,
loads scenario files, runs scenarios or the built-in verify suite and maps
errors to exit codes (0 success, 1 validation, 2 FAIL record, 3 I/O).
"""

import argparse
import os
import sys
from typing import List, Optional, Sequence

from dotenv import load_dotenv

from .config.loader import ConfigurationLoader
from .config_types import OutputFormat, Scenario
from .errors import ConfigurationError, GrwTailsError, ScenarioFailure
from .logging_config import get_logger, setup_cli_logging
from .models import RunReport
from .orchestrator import ScenarioOrchestrator, scenario_registry
from .orchestrator.init_scenarios import initialize_scenarios
from .orchestrator.verify import DEFAULT_VERIFY_SEED, run_verify, verify_step_labels
from .progress import MultiStepProgress, print_error, print_success, progress
from .report_writer import emit_report, emit_suite, write_atomic, write_series
from .scenarios.factory import definition_for

logger = get_logger(__name__)


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser for CLI."""
    parser = argparse.ArgumentParser(
        prog="grwtails",
        description="Numerical laboratory for the tails of GRW collapse",
        epilog="""
🚀 QUICK START:
  # List scenarios and the parameters they need
  grwtails scenarios

  # Run one scenario file, report to stdout
  grwtails run two_peak.cfg

  # Fix the seed and write CSV to a file
  grwtails run cat.cfg --seed 7 --format csv --out cat.csv

  # Reproduce every built-in check; nonzero exit on any FAIL
  grwtails verify

⚙️ ENVIRONMENT:
  GRWTAILS_SEED, GRWTAILS_OUTPUT, GRWTAILS_FORMAT, GRWTAILS_WORKERS override
  the scenario file; command-line flags override both. A .env file in the
  working directory is read first.
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--verbose", action="store_true", help="Log at DEBUG level to stderr"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run one scenario file")
    run_parser.add_argument("config", help="Path to a key = value scenario file")
    _add_output_arguments(run_parser)
    run_parser.add_argument(
        "--series-dir",
        help="Also write plot-ready CSV series (snapshots, event times) here",
    )

    subparsers.add_parser("scenarios", help="List scenarios and their parameters")

    verify_parser = subparsers.add_parser(
        "verify", help="Run the built-in reproduction suite"
    )
    _add_output_arguments(verify_parser)
    return parser


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Override the seed")
    parser.add_argument("--out", help="Write the report here instead of stdout")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        help="Report format (default: json)",
    )
    parser.add_argument(
        "--workers", type=int, help="Threads for repetition ensembles (default: 1)"
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        help="Include elapsed_seconds in JSON output (breaks byte-identical reruns)",
    )


def _emit(data: bytes, out: Optional[str]) -> None:
    if out:
        path = write_atomic(out, data)
        print_success(f"Report written to {path}")
    else:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()


def _check_failures(reports: Sequence[RunReport]) -> None:
    failed = [f"{r.scenario}: {rec.name}" for r in reports for rec in r.failed]
    if failed:
        raise ScenarioFailure(f"{len(failed)} record(s) FAIL: " + "; ".join(failed))


def command_run(args: argparse.Namespace) -> int:
    config = ConfigurationLoader().load_file(
        args.config,
        seed=args.seed,
        output_path=args.out,
        format=args.format,
        workers=args.workers,
    )
    initialize_scenarios()
    orchestrator = ScenarioOrchestrator(scenario_registry)
    with progress(f"Running {config.scenario.value}"):
        run = orchestrator.execute(config)
    _emit(emit_report(run.report, config.format, args.timing), config.output_path)
    if args.series_dir and run.series:
        written = write_series(run.series, args.series_dir)
        logger.info("series_written", files=[str(p) for p in written])
    _check_failures([run.report])
    return 0


def command_scenarios(args: argparse.Namespace) -> int:
    for scenario in Scenario:
        print(definition_for(scenario).describe())
    return 0


def _env_choice(value: Optional[str], env_var: str) -> Optional[str]:
    return value if value is not None else os.environ.get(env_var) or None


def command_verify(args: argparse.Namespace) -> int:
    seed_text = _env_choice(None if args.seed is None else str(args.seed), "GRWTAILS_SEED")
    workers_text = _env_choice(
        None if args.workers is None else str(args.workers), "GRWTAILS_WORKERS"
    )
    try:
        seed = DEFAULT_VERIFY_SEED if seed_text is None else int(seed_text)
        workers = None if workers_text is None else int(workers_text)
        output_format = OutputFormat(
            (_env_choice(args.format, "GRWTAILS_FORMAT") or OutputFormat.JSON.value).lower()
        )
    except ValueError as e:
        raise ConfigurationError(f"invalid verify setting: {e}") from e

    steps = MultiStepProgress(verify_step_labels())
    reports = run_verify(seed, workers=workers, progress=steps)
    _emit(
        emit_suite(reports, output_format, args.timing),
        _env_choice(args.out, "GRWTAILS_OUTPUT"),
    )
    _check_failures(reports)
    return 0


COMMANDS = {
    "run": command_run,
    "scenarios": command_scenarios,
    "verify": command_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point for the grwtails command."""
    load_dotenv()
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    setup_cli_logging(verbose=args.verbose)

    try:
        return COMMANDS[args.command](args)
    except GrwTailsError as e:
        print_error(str(e))
        return e.exit_code
    except KeyboardInterrupt:
        print_error("Interrupted")
        return 1
    except Exception as e:
        logger.exception("unexpected_error")
        print_error(f"Unexpected error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
