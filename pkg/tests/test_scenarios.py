"""Tests for the scenario runners, run end to end through parse_config."""

import pytest

from src.config import parse_config
from src.config_types import Scenario, Units
from src.errors import ConfigurationError, ValidationError
from src.models import Verdict
from src.orchestrator.verify import VERIFY_CASES, run_verify, verify_step_labels
from src.scenarios import (
    CatDecayScenario,
    KernelCompareScenario,
    TwoPeakCollapseScenario,
)
from src.scenarios.factory import ScenarioFactory, available_scenarios, definition_for


def _run(text: str):
    config = parse_config(text)
    return ScenarioFactory().create_runner(config.scenario).run(config)


def _by_name(result):
    return {record.name: record for record in result.records}


class TestScenarioFactory:
    @pytest.mark.parametrize("scenario", list(Scenario))
    def test_creates_runner_for_every_scenario(self, scenario):
        runner = ScenarioFactory().create_runner(scenario)
        assert runner.definition.scenario is scenario

    def test_available_scenarios(self):
        assert available_scenarios() == tuple(s.value for s in Scenario)

    def test_describe_lists_requirements(self):
        text = definition_for(Scenario.CAT_DECAY).describe()
        assert text.startswith("cat-decay:")
        assert "required: mass, d" in text
        assert "units: si" in text

    def test_accepted_parameters(self):
        accepted = definition_for(Scenario.TWO_PEAK_COLLAPSE).accepted_parameters
        assert {"w", "x0", "a", "grid_points", "x_min", "x_max"} == accepted


class TestTwoPeakCollapse:
    def test_closed_form_reproduced(self):
        result = _run("scenario = two-peak-collapse\nseed = 1\nunits = natural\nw = 1\na = 10\nx0 = 5\n")
        records = _by_name(result)
        assert records["tail displacement"].predicted == pytest.approx(4.9505, abs=1e-4)
        assert records["tail displacement"].verdict is Verdict.PASS
        assert records["suppression exponent constant"].paper_value == 1.0
        assert records["suppression exponent constant"].measured == pytest.approx(0.5)
        assert all(r.verdict is not Verdict.FAIL for r in result.records)
        (series,) = result.series
        assert series.header == ("x", "before", "after")
        assert len(series.rows) == 8192

    def test_coincident_peaks(self):
        result = _run("scenario = two-peak-collapse\nseed = 1\nunits = natural\nw = 1\na = 10\nx0 = 0\n")
        records = _by_name(result)
        assert records["tail displacement"].verdict is Verdict.PASS
        assert records["suppression"].measured == 1.0
        assert "suppression exponent constant" not in records

    def test_wide_peaks_skip_approximation(self):
        record = TwoPeakCollapseScenario._approximation_record(5.0, 10.0, 10.0, 8.0)
        assert record.verdict is Verdict.INFO

    def test_resolve_window(self):
        resolved = TwoPeakCollapseScenario().resolve_parameters(
            {"w": 1.0, "x0": -5.0, "a": 10.0, "grid_points": 8192}, Units.NATURAL
        )
        assert resolved["x_min"] == -25.0
        assert resolved["x_max"] == 20.0


class TestKickExcitation:
    @pytest.mark.parametrize("d", ["1", "-3", "0"])
    def test_no_failures(self, d):
        result = _run(f"scenario = kick-excitation\nseed = 1\nunits = natural\nw = 1\na = 10\nd = {d}\n")
        assert all(r.verdict is not Verdict.FAIL for r in result.records)

    def test_thresholds(self):
        result = _run("scenario = kick-excitation\nseed = 1\nunits = natural\nw = 1\na = 10\nd = 1\n")
        records = _by_name(result)
        assert records["excitation threshold"].measured == pytest.approx(100.0)
        assert records["atomic excitation threshold"].measured == pytest.approx(1e-4)
        assert records["nuclear excitation threshold"].measured == pytest.approx(1.0)

    def test_far_hit_is_reported_not_judged(self):
        result = _run("scenario = kick-excitation\nseed = 1\nunits = natural\nw = 1\na = 10\nd = 20\n")
        assert _by_name(result)["kick (quadrature vs linear)"].verdict is Verdict.INFO


class TestKernelCompare:
    def test_compact_kernel_erases_tail(self):
        result = _run("scenario = kernel-compare\nseed = 1\nunits = natural\nw = 1\na = 10\n")
        records = _by_name(result)
        assert records["residual tail mass (compact)"].measured == 0.0
        assert records["residual tail mass (gaussian)"].measured > 0.0
        assert all(r.verdict is not Verdict.FAIL for r in result.records)

    def test_tail_inside_support_rejected(self):
        config = parse_config(
            "scenario = kernel-compare\nseed = 1\nunits = natural\nw = 1\na = 10\nseparation = 50\n"
        )
        with pytest.raises(ValidationError, match="overlaps"):
            KernelCompareScenario().run(config)


class TestFreeSpreading:
    def test_no_failures(self):
        result = _run("scenario = free-spreading\nseed = 1\nunits = natural\nw = 1\n")
        records = _by_name(result)
        assert records["mass outside truncated support"].verdict is Verdict.PASS
        assert records["packet width"].predicted == pytest.approx(5**0.5)
        assert all(r.verdict is not Verdict.FAIL for r in result.records)

    def test_si_defaults_use_neutron_mass(self):
        config = parse_config("scenario = free-spreading\nseed = 1\nw = 1e-9\n")
        assert config.param("particle_mass") == pytest.approx(1.67492749804e-27)


class TestCatDecay:
    def test_saturated_kilogram(self):
        result = _run("scenario = cat-decay\nseed = 1\nmass = 1\nd = 2\n")
        records = _by_name(result)
        assert records["power"].predicted == pytest.approx(1e11)
        assert records["power"].paper_value == 1e11
        assert records["ejection probability"].predicted == 1.0
        assert records["dose rate"].note == "fatal"
        assert records["first collapse time"].predicted == pytest.approx(1e-11)
        assert all(r.verdict is not Verdict.FAIL for r in result.records)
        (series,) = result.series
        assert series.header == ("time_s",)

    def test_first_hit_figure_follows_nucleon_count(self):
        result = _run("scenario = cat-decay\nseed = 1\nmass = 1\nn_nucleons = 1e30\nd = 2\nduration = 1e-10\n")
        records = _by_name(result)
        assert records["first collapse time"].predicted == pytest.approx(1e-14)
        assert records["first collapse time"].paper_value == 1e-14
        assert records["power"].paper_value is None

    def test_no_printed_first_hit_for_other_masses(self):
        records = _by_name(_run("scenario = cat-decay\nseed = 1\nmass = 10\nd = 2\n"))
        assert records["first collapse time"].paper_value is None
        kilogram = _by_name(_run("scenario = cat-decay\nseed = 1\nmass = 1\nd = 2\n"))
        assert kilogram["first collapse time"].paper_value == 1e-11

    def test_verify_runs_large_nucleon_count(self):
        assert any("n_nucleons = 1e30" in case.text for case in VERIFY_CASES)

    def test_consistency_records(self):
        result = _run("scenario = cat-decay\nseed = 1\nmass = 1\nd = 2\n")
        records = _by_name(result)
        assert records["consistency: power_watts_per_kg"].note.startswith("inconsistent")
        assert records["consistency: dose_from_printed_power"].note.startswith("consistent")

    def test_long_window_switches_to_counts(self):
        config = parse_config("scenario = cat-decay\nseed = 1\nmass = 1\nd = 2\nduration = 1\nrepetitions = 2\n")
        result = CatDecayScenario().run(config)
        assert result.series == ()

    def test_same_seed_same_records(self):
        text = "scenario = cat-decay\nseed = 8\nmass = 1\nd = 0.5\n"
        assert _run(text).records == _run(text).records

    def test_natural_units_rejected(self):
        with pytest.raises(ConfigurationError, match="units"):
            parse_config("scenario = cat-decay\nseed = 1\nunits = natural\nmass = 1\nd = 2\n")


@pytest.mark.slow
class TestSampleCenters:
    def test_no_failures(self):
        result = _run("scenario = sample-centers\nseed = 1\nunits = natural\nw = 1\na = 10\n")
        assert all(r.verdict is not Verdict.FAIL for r in result.records)


@pytest.mark.slow
class TestVerifySuite:
    def test_every_case_passes(self):
        reports = run_verify(seed=20240611)
        assert len(reports) == len(VERIFY_CASES) + 1 == len(verify_step_labels())
        assert reports[0].scenario == "two-peak-sweep"
        failed = [(r.scenario, rec.name) for r in reports for rec in r.failed]
        assert failed == []


class TestSlowMarker:
    def test_registered_in_project_settings(self, pytestconfig):
        assert any(line.startswith("slow:") for line in pytestconfig.getini("markers"))
