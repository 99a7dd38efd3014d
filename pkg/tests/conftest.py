"""Shared fixtures: natural-unit grids, seeded generators, scenario files."""

import os
from pathlib import Path
from typing import Callable, Generator

import numpy as np
import pytest

from src.cache import get_density_cache
from src.models import GaussianPeak, Grid1D, WaveFunction
from src.wavefunction import make_gaussian_superposition

GRWTAILS_ENV_VARS = (
    "GRWTAILS_SEED",
    "GRWTAILS_OUTPUT",
    "GRWTAILS_FORMAT",
    "GRWTAILS_WORKERS",
    "GRWTAILS_LOG_LEVEL",
    "GRWTAILS_LOG_FORMAT",
    "GRWTAILS_LOG_FILE",
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep overrides from the developer's shell out of every test."""
    for name in GRWTAILS_ENV_VARS:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(autouse=True)
def fresh_density_cache() -> Generator[None, None, None]:
    get_density_cache().invalidate()
    yield
    get_density_cache().invalidate()


@pytest.fixture
def natural_grid() -> Grid1D:
    """[-40, 40] with 4001 points: dx = 0.02, fine for widths of order 1."""
    return Grid1D(-40.0, 40.0, 4001)


@pytest.fixture
def gaussian_state(natural_grid: Grid1D) -> WaveFunction:
    return make_gaussian_superposition(natural_grid, [GaussianPeak(0.0, 1.0)])


@pytest.fixture
def two_peak_state(natural_grid: Grid1D) -> WaveFunction:
    return make_gaussian_superposition(
        natural_grid, [GaussianPeak(-10.0, 1.0), GaussianPeak(10.0, 1.0)]
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def isolated_temp_dir(tmp_path: Path) -> Path:
    """Provide isolated temporary directory for each test."""
    os.chmod(tmp_path, 0o755)
    return tmp_path


@pytest.fixture
def write_config(isolated_temp_dir: Path) -> Callable[[str, str], Path]:
    """Write a scenario file into the temporary directory and return its path."""

    def _write(text: str, name: str = "scenario.cfg") -> Path:
        path = isolated_temp_dir / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
