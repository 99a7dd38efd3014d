"""Tests for the scenario registry and orchestrator."""

from typing import Dict

import pytest

from src import __version__
from src.config import parse_config
from src.config_types import Scenario, ScenarioConfig, Units
from src.errors import ScenarioExecutionError, SupportError
from src.models import QuantityRecord
from src.orchestrator import ScenarioOrchestrator, ScenarioRegistry, run_scenario, scenario_registry
from src.orchestrator.init_scenarios import initialize_scenarios
from src.scenarios import ScenarioResult, Series, TwoPeakCollapseScenario
from src.scenarios.factory import ScenarioFactory


class FakeRunner:
    definition = TwoPeakCollapseScenario.definition

    def resolve_parameters(self, parameters: Dict[str, float], units: Units) -> Dict[str, float]:
        return parameters

    def run(self, config: ScenarioConfig) -> ScenarioResult:
        return ScenarioResult(
            records=(QuantityRecord.judged("width", 1.0, 1.001, 0.01),),
            series=(Series("fake", ("x",), [(0.0,)]),),
        )


class DomainFailingRunner(FakeRunner):
    def run(self, config: ScenarioConfig) -> ScenarioResult:
        raise SupportError("kernel vanishes here")


class CrashingRunner(FakeRunner):
    def run(self, config: ScenarioConfig) -> ScenarioResult:
        raise ZeroDivisionError("boom")


@pytest.fixture
def config() -> ScenarioConfig:
    return ScenarioConfig(
        scenario=Scenario.TWO_PEAK_COLLAPSE,
        seed=11,
        parameters={"w": 1.0, "x0": 5.0, "a": 10.0},
        units=Units.NATURAL,
    )


class TestScenarioRegistry:
    def test_register_and_get(self):
        registry = ScenarioRegistry()
        registry.register(Scenario.TWO_PEAK_COLLAPSE, FakeRunner)
        assert registry.get_runner(Scenario.TWO_PEAK_COLLAPSE) is FakeRunner
        assert registry.list_scenarios() == [Scenario.TWO_PEAK_COLLAPSE]

    def test_unregistered(self):
        with pytest.raises(ValueError, match="cat-decay"):
            ScenarioRegistry().get_runner(Scenario.CAT_DECAY)

    def test_initialize_registers_every_scenario(self):
        initialize_scenarios()
        assert set(scenario_registry.list_scenarios()) == set(Scenario)


class TestScenarioOrchestrator:
    def _orchestrator(self, runner_class) -> ScenarioOrchestrator:
        registry = ScenarioRegistry()
        registry.register(Scenario.TWO_PEAK_COLLAPSE, runner_class)
        return ScenarioOrchestrator(registry)

    def test_report_fields(self, config):
        run = self._orchestrator(FakeRunner).execute(config)
        report = run.report
        assert report.scenario == "two-peak-collapse"
        assert report.seed == 11
        assert report.units == "natural"
        assert report.version == __version__
        assert report.parameters == {"a": 10.0, "w": 1.0, "x0": 5.0}
        assert report.passed
        assert report.elapsed_seconds >= 0
        assert run.series[0].name == "fake"

    def test_domain_error_is_wrapped(self, config):
        with pytest.raises(ScenarioExecutionError) as exc_info:
            self._orchestrator(DomainFailingRunner).execute(config)
        assert exc_info.value.scenario == "two-peak-collapse"
        assert "kernel vanishes" in str(exc_info.value)
        assert exc_info.value.exit_code == 1
        assert isinstance(exc_info.value.__cause__, SupportError)

    def test_unexpected_error_is_wrapped(self, config):
        with pytest.raises(ScenarioExecutionError, match="ZeroDivisionError: boom"):
            self._orchestrator(CrashingRunner).execute(config)

    def test_missing_runner_is_wrapped(self, config):
        with pytest.raises(ScenarioExecutionError, match="No runner registered"):
            ScenarioOrchestrator(ScenarioRegistry()).execute(config)

    def test_factory_takes_precedence(self, config, mocker):
        factory = mocker.Mock(spec=ScenarioFactory)
        factory.create_runner.return_value = FakeRunner()
        run = ScenarioOrchestrator(ScenarioRegistry(), runner_factory=factory).execute(config)
        factory.create_runner.assert_called_once_with(Scenario.TWO_PEAK_COLLAPSE)
        assert len(run.report.records) == 1


class TestRunScenario:
    def test_runs_a_real_scenario(self):
        config = parse_config(
            "scenario = kick-excitation\nseed = 5\nunits = natural\nw = 1\na = 10\nd = 1\n"
        )
        report = run_scenario(config)
        assert report.scenario == "kick-excitation"
        assert report.passed
