"""
Progress reporting for scenario runs and the verify suite.

Everything here writes to stderr so that a report written to stdout stays
byte-clean.
"""

import sys
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional, TextIO


class ProgressIndicator:
    """Start/finish line for one blocking scenario run."""

    def __init__(self, message: str = "Running", stream: Optional[TextIO] = None):
        self.message = message
        self.stream = stream or sys.stderr
        self.start_time: Optional[float] = None

    @property
    def is_running(self) -> bool:
        return self.start_time is not None

    def start(self) -> None:
        self.start_time = time.monotonic()
        self.stream.write(f"{self.message} ...")
        self.stream.flush()

    def stop(self, final_message: str = "done") -> None:
        if self.start_time is None:
            return
        elapsed = time.monotonic() - self.start_time
        self.start_time = None
        self.stream.write(f" {final_message} ({elapsed:.1f}s)\n")
        self.stream.flush()


@contextmanager
def progress(message: str = "Running", stream: Optional[TextIO] = None) -> Iterator[ProgressIndicator]:
    """
    Context manager for showing progress.

    Example:
        with progress("Running two-peak-collapse"):
            report = run_scenario(config)
    """
    indicator = ProgressIndicator(message, stream)
    indicator.start()
    try:
        yield indicator
    except BaseException:
        indicator.stop("aborted")
        raise
    indicator.stop()


class MultiStepProgress:
    """One line per verify case, then a summary counting cases with FAIL records."""

    def __init__(self, steps: List[str], stream: Optional[TextIO] = None):
        self.steps = steps
        self.stream = stream or sys.stderr
        self.current_step = 0
        self.failing_steps: List[str] = []
        self.start_time = time.monotonic()

    @property
    def total_steps(self) -> int:
        return len(self.steps)

    def next_step(self) -> None:
        if self.current_step >= self.total_steps:
            return
        self.current_step += 1
        label = self.steps[self.current_step - 1]
        print(f"[{self.current_step}/{self.total_steps}] {label}", file=self.stream)

    def step_failed(self, n_failed: int) -> None:
        """Note FAIL records in the step just started."""
        if n_failed and self.current_step:
            self.failing_steps.append(self.steps[self.current_step - 1])

    def complete(self) -> None:
        elapsed = time.monotonic() - self.start_time
        summary = f"{self.current_step}/{self.total_steps} cases run in {elapsed:.1f}s"
        if self.failing_steps:
            summary += f", FAIL in: {', '.join(self.failing_steps)}"
        print(summary, file=self.stream)


def print_success(message: str) -> None:
    print(f"✅ {message}", file=sys.stderr)


def print_error(message: str) -> None:
    print(f"❌ {message}", file=sys.stderr)
