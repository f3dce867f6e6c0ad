import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from rcdkit.core.config import ConfigManager, RcdkitConfig


def test_defaults(fake_home):
    config = ConfigManager().load()
    assert config == RcdkitConfig()
    assert config.tolerance == Fraction(1, 10**9)
    assert (fake_home / ".rcdkit").is_dir()


def test_save_and_update_round_trip(tmp_path, fake_home):
    manager = ConfigManager(config_path=tmp_path / "config.json")
    manager.update(trials=250, seed=7, unknown_key="ignored")

    config = manager.load()
    assert (config.trials, config.seed) == (250, 7)
    assert "unknown_key" not in json.loads((tmp_path / "config.json").read_text())


def test_corrupted_config_falls_back_to_defaults(tmp_path, fake_home):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    assert ConfigManager(config_path=path).load() == RcdkitConfig()

    path.write_text(json.dumps({"n_max": 99}))
    assert ConfigManager(config_path=path).load().n_max == 5


def test_env_overrides(tmp_path, monkeypatch, fake_home):
    monkeypatch.setenv("RCDKIT_WORKERS", "4")
    monkeypatch.setenv("RCDKIT_SEED", "123")
    config = ConfigManager(config_path=tmp_path / "config.json").load()
    assert (config.workers, config.seed) == (4, 123)


def test_invalid_env_override_is_ignored(tmp_path, monkeypatch, fake_home):
    monkeypatch.setenv("RCDKIT_WORKERS", "zero")
    assert ConfigManager(config_path=tmp_path / "config.json").load().workers == 1


@pytest.mark.parametrize(
    "fields",
    [
        {"epsilon": "-1e-3"},
        {"epsilon": "tiny"},
        {"n_min": 6, "n_max": 4},
        {"oracle_max_n": 11},
        {"trials": 0},
    ],
)
def test_validation(fields):
    with pytest.raises(ValidationError):
        RcdkitConfig(**fields)


def test_decimal_epsilon():
    assert RcdkitConfig(epsilon="0.001").tolerance == Fraction(1, 1000)
