from fractions import Fraction
from pathlib import Path

import pytest

from rcdkit.core.fixtures import (
    stationary_measure_for_trivial_kernel,
    three_state_block_kernel,
    trivial_not_total_kernel,
)
from rcdkit.core.measures import Measure, uniform

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def fake_home(monkeypatch, tmp_path):
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.setattr(Path, "home", lambda: home)
    monkeypatch.delenv("RCDKIT_WORKERS", raising=False)
    monkeypatch.delenv("RCDKIT_SEED", raising=False)
    return home


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES


@pytest.fixture
def four_state():
    return trivial_not_total_kernel()


@pytest.fixture
def three_state():
    return three_state_block_kernel()


@pytest.fixture
def uniform4() -> Measure:
    return uniform(4)


@pytest.fixture
def four_state_stationary() -> Measure:
    return stationary_measure_for_trivial_kernel()


@pytest.fixture
def measure():
    def _measure(*weights) -> Measure:
        return Measure(tuple(Fraction(w) for w in weights))

    return _measure
