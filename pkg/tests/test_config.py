"""Environment-driven configuration."""

import pytest

from classbound.config import Config, get_config, set_config


def test_defaults():
    config = Config()
    assert config.cap == 20_000_000
    assert config.brute_cap == 1_000_000
    assert config.seed == 42
    assert config.to_dict()["tolerance"] == 1e-9


def test_from_env(monkeypatch):
    monkeypatch.setenv("CLASSBOUND_SEED", "7")
    monkeypatch.setenv("CLASSBOUND_CAP", "1000")
    config = Config.from_env()
    assert (config.seed, config.cap) == (7, 1000)


def test_from_env_rejects_non_integers(monkeypatch):
    monkeypatch.setenv("CLASSBOUND_BRUTE_CAP", "lots")
    with pytest.raises(ValueError):
        Config.from_env()


def test_set_config_is_process_wide():
    set_config(Config(seed=3))
    assert get_config().seed == 3
