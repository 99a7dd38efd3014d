"""Tests for the grwtails command line."""

import json

import pytest

from src.cli_main import create_argument_parser, main
from src.errors import ReportWriteError
from src.models import QuantityRecord, RunReport
from src.report_writer import parse_report

KICK = "scenario = kick-excitation\nseed = 4\nunits = natural\nw = 1\na = 10\nd = 1\n"


@pytest.fixture(autouse=True)
def quiet_dotenv(mocker):
    mocker.patch("src.cli_main.load_dotenv")


def _report(*records: QuantityRecord) -> RunReport:
    return RunReport("two-peak-sweep", {}, 1, "natural", records)


class TestArgumentParser:
    def test_command_required(self):
        with pytest.raises(SystemExit):
            create_argument_parser().parse_args([])

    def test_run_options(self):
        args = create_argument_parser().parse_args(
            ["run", "a.cfg", "--seed", "3", "--format", "csv", "--workers", "2", "--timing"]
        )
        assert args.config == "a.cfg"
        assert args.seed == 3
        assert args.format == "csv"
        assert args.workers == 2
        assert args.timing


class TestScenariosCommand:
    def test_lists_every_scenario(self, capsys):
        assert main(["scenarios"]) == 0
        out = capsys.readouterr().out
        for name in ("two-peak-collapse", "kick-excitation", "cat-decay", "free-spreading"):
            assert f"{name}:" in out


class TestRunCommand:
    def test_report_to_stdout(self, write_config, capsys):
        assert main(["run", str(write_config(KICK))]) == 0
        report = parse_report(capsys.readouterr().out)
        assert report.scenario == "kick-excitation"
        assert report.seed == 4

    def test_reruns_are_byte_identical(self, write_config, capsys):
        path = str(write_config(KICK))
        main(["run", path])
        first = capsys.readouterr().out
        main(["run", path])
        assert capsys.readouterr().out == first

    def test_seed_flag_and_file_output(self, write_config, isolated_temp_dir, capsys):
        out = isolated_temp_dir / "kick.csv"
        assert main(["run", str(write_config(KICK)), "--seed", "9", "--format", "csv", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert out.read_text().splitlines()[0] == "name,predicted,measured,paper_value,tolerance,verdict"

    def test_environment_output(self, write_config, isolated_temp_dir, monkeypatch):
        out = isolated_temp_dir / "env.json"
        monkeypatch.setenv("GRWTAILS_OUTPUT", str(out))
        assert main(["run", str(write_config(KICK))]) == 0
        assert json.loads(out.read_text())["scenario"] == "kick-excitation"

    def test_series_directory(self, write_config, isolated_temp_dir):
        text = "scenario = free-spreading\nseed = 1\nunits = natural\nw = 1\n"
        series_dir = isolated_temp_dir / "series"
        out = isolated_temp_dir / "report.json"
        assert main(["run", str(write_config(text)), "--out", str(out), "--series-dir", str(series_dir)]) == 0
        assert (series_dir / "free-spreading_states.csv").exists()

    def test_invalid_config_exits_1(self, write_config, capsys):
        assert main(["run", str(write_config("scenario = cat-decay\nmass = 1\nd = 2\n"))]) == 1
        assert "`seed`" in capsys.readouterr().err

    def test_missing_file_exits_1(self, isolated_temp_dir, capsys):
        assert main(["run", str(isolated_temp_dir / "absent.cfg")]) == 1
        assert "not found" in capsys.readouterr().err

    def test_unwritable_output_exits_3(self, write_config, isolated_temp_dir):
        out = isolated_temp_dir / "absent" / "report.json"
        assert main(["run", str(write_config(KICK)), "--out", str(out)]) == 3

    def test_failed_record_exits_2(self, write_config, mocker, capsys):
        run = mocker.patch("src.cli_main.ScenarioOrchestrator.execute")
        run.return_value.report = _report(QuantityRecord.judged("width", 1.0, 2.0, 0.01))
        run.return_value.series = ()
        assert main(["run", str(write_config(KICK))]) == 2
        assert "width" in capsys.readouterr().err

    def test_unexpected_error_exits_1(self, write_config, mocker):
        mocker.patch("src.cli_main.ScenarioOrchestrator.execute", side_effect=RuntimeError("oops"))
        assert main(["run", str(write_config(KICK))]) == 1


class TestVerifyCommand:
    def test_passing_suite(self, mocker, capsys):
        run_verify = mocker.patch(
            "src.cli_main.run_verify",
            return_value=(_report(QuantityRecord.judged("width", 1.0, 1.0, 0.01)),),
        )
        assert main(["verify", "--seed", "12"]) == 0
        assert run_verify.call_args.args[0] == 12
        payload = json.loads(capsys.readouterr().out)
        assert payload["failed"] == 0

    def test_environment_seed(self, mocker, monkeypatch):
        run_verify = mocker.patch("src.cli_main.run_verify", return_value=())
        monkeypatch.setenv("GRWTAILS_SEED", "77")
        monkeypatch.setenv("GRWTAILS_WORKERS", "3")
        assert main(["verify"]) == 0
        assert run_verify.call_args.args[0] == 77
        assert run_verify.call_args.kwargs["workers"] == 3

    def test_default_seed(self, mocker):
        run_verify = mocker.patch("src.cli_main.run_verify", return_value=())
        main(["verify"])
        assert run_verify.call_args.args[0] == 20240611

    def test_failing_suite_exits_2(self, mocker):
        mocker.patch(
            "src.cli_main.run_verify",
            return_value=(_report(QuantityRecord.judged("width", 1.0, 2.0, 0.01)),),
        )
        assert main(["verify"]) == 2

    def test_bad_environment_exits_1(self, monkeypatch, capsys):
        monkeypatch.setenv("GRWTAILS_WORKERS", "many")
        assert main(["verify"]) == 1
        assert "invalid verify setting" in capsys.readouterr().err

    def test_write_error_exits_3(self, mocker):
        mocker.patch("src.cli_main.run_verify", return_value=())
        mocker.patch("src.cli_main.write_atomic", side_effect=ReportWriteError("nope"))
        assert main(["verify", "--out", "x.json"]) == 3


@pytest.mark.slow
class TestVerifyReproducibility:
    def test_same_seed_gives_identical_suite_bytes(self, capsys):
        first_code = main(["verify", "--seed", "5", "--workers", "2"])
        first = capsys.readouterr().out
        second_code = main(["verify", "--seed", "5", "--workers", "1"])
        second = capsys.readouterr().out
        assert first_code == second_code
        assert first == second
        assert len(json.loads(first)["reports"]) > 1
