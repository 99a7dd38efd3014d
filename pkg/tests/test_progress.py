"""Test progress reporting."""

from io import StringIO

import pytest

from src.progress import (
    MultiStepProgress,
    ProgressIndicator,
    print_error,
    print_success,
    progress,
)


class TestProgressIndicator:
    def test_start_and_stop(self, capsys):
        indicator = ProgressIndicator("Testing")
        indicator.start()
        assert indicator.is_running
        indicator.stop()

        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err.startswith("Testing ... done (")
        assert not indicator.is_running

    def test_custom_final_message(self):
        stream = StringIO()
        indicator = ProgressIndicator("Processing", stream=stream)
        indicator.start()
        indicator.stop("finished")
        assert stream.getvalue().startswith("Processing ... finished (")

    def test_stop_without_start(self):
        stream = StringIO()
        ProgressIndicator("Test", stream=stream).stop()
        assert stream.getvalue() == ""


class TestProgressContext:
    def test_writes_to_stderr(self, capsys):
        with progress("Running cat-decay"):
            pass
        captured = capsys.readouterr()
        assert "Running cat-decay ... done" in captured.err
        assert captured.out == ""

    def test_error_marks_aborted(self):
        stream = StringIO()
        with pytest.raises(ValueError):
            with progress("Failing", stream):
                raise ValueError("boom")
        assert "aborted" in stream.getvalue()
        assert "done" not in stream.getvalue()


class TestMultiStepProgress:
    def test_steps_and_summary(self):
        stream = StringIO()
        steps = MultiStepProgress(["sweep", "kick"], stream=stream)
        steps.next_step()
        steps.step_failed(0)
        steps.next_step()
        steps.complete()
        lines = stream.getvalue().splitlines()
        assert lines[0] == "[1/2] sweep"
        assert lines[1] == "[2/2] kick"
        assert lines[2].startswith("2/2 cases run in ")
        assert "FAIL" not in lines[2]

    def test_failing_steps_are_named(self):
        stream = StringIO()
        steps = MultiStepProgress(["sweep", "kick"], stream=stream)
        steps.next_step()
        steps.step_failed(3)
        steps.next_step()
        steps.complete()
        assert steps.failing_steps == ["sweep"]
        assert stream.getvalue().splitlines()[-1].endswith("FAIL in: sweep")

    def test_beyond_limit(self):
        stream = StringIO()
        steps = MultiStepProgress(["only"], stream=stream)
        steps.next_step()
        steps.next_step()
        assert steps.current_step == 1
        assert len(stream.getvalue().splitlines()) == 1


class TestConsoleHelpers:
    @pytest.mark.parametrize("helper, marker", [(print_success, "✅"), (print_error, "❌")])
    def test_helpers_write_to_stderr(self, capsys, helper, marker):
        helper("message")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert marker in captured.err
        assert "message" in captured.err
