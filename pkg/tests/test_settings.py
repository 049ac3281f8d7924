#!/usr/bin/env python3
# tests/test_settings.py

import json

import pytest

from config.settings import (
    LoggingSettings, QuadratureSettings, RegulatorSettings, RunConfig, get_env_bool, get_env_int,
    load_config_from_dict, load_config_from_file, load_logging_settings_from_env,
)
from constants import DEFAULT_EPSILON_FACTORS, DEFAULT_LOG_BACKUP_COUNT, UNITS_SI
from errors import ConfigError


def test_defaults_are_valid():
    config = RunConfig()
    assert config.validate() == []
    assert config.regulators.epsilon_factors == DEFAULT_EPSILON_FACTORS
    assert config.physical_constants().c == 1.0


def test_load_from_dict_with_sections():
    config = load_config_from_dict({
        "units": "si",
        "seed": 7,
        "quadrature": {"epsrel": 1e-8},
        "regulators": {"epsilon_factors": [0.2, 0.1, 0.05, 0.025], "extrapolation_order": 3},
        "normalization": {"discrete_em_convention": "riemann"},
        "monte_carlo": {"ensembles": 500},
    })
    assert config.units == UNITS_SI
    assert config.seed == 7
    assert config.quadrature.epsrel == 1e-8
    assert config.regulators.epsilon_factors == (0.2, 0.1, 0.05, 0.025)
    assert config.normalization.discrete_em_convention == "riemann"
    assert config.monte_carlo.ensembles == 500
    assert config.physical_constants().c == pytest.approx(299792458.0)


def test_constant_overrides():
    config = load_config_from_dict({"constants": {"c": 2.0}})
    constants = config.physical_constants()
    assert constants.c == 2.0
    assert constants.hbar == 1.0


@pytest.mark.parametrize("document", [
    {"unknown": 1},
    {"quadrature": {"tolerance": 1e-3}},
    {"quadrature": []},
    {"units": "cgs"},
    {"normalization": {"discrete_em_convention": "other"}},
    {"regulators": {"epsilon_factors": [0.1, 0.2, 0.05]}},
    {"regulators": {"extrapolation_order": 5}},
    {"monte_carlo": {"n_max": 0}},
    {"constants": {"G": 1.0}},
    {"constants": {"c": -1.0}},
    {"seed": -3},
])
def test_invalid_documents_raise(document):
    with pytest.raises(ConfigError):
        load_config_from_dict(document)


def test_validation_messages_name_the_field():
    errors = RegulatorSettings(eta_factors=(0.1, 0.2)).validate()
    assert any("eta_factors" in message for message in errors)
    assert QuadratureSettings(epsabs=0.0, epsrel=0.0).validate()


def test_load_from_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 11}), encoding="utf-8")
    assert load_config_from_file(str(path)).seed == 11


def test_load_from_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config_from_file(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_from_file(str(broken))


def test_to_dict_round_trips():
    config = RunConfig(seed=3)
    assert load_config_from_dict(config.to_dict()).to_dict() == config.to_dict()


def test_env_helpers(monkeypatch):
    monkeypatch.setenv("FLAG_ON", "Yes")
    monkeypatch.setenv("FLAG_OFF", "0")
    monkeypatch.setenv("COUNT", "12")
    monkeypatch.setenv("BROKEN", "twelve")
    monkeypatch.delenv("MISSING", raising=False)
    assert get_env_bool("FLAG_ON") is True
    assert get_env_bool("FLAG_OFF", True) is False
    assert get_env_bool("MISSING", True) is True
    assert get_env_int("COUNT", 1) == 12
    assert get_env_int("BROKEN", 4) == 4
    assert get_env_int("MISSING", 9) == 9


def test_logging_settings_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv("DEBUG", "true")
    monkeypatch.setenv("LOG_DIR", str(tmp_path))
    monkeypatch.setenv("LOG_BACKUP_COUNT", "-2")
    settings = load_logging_settings_from_env(str(tmp_path / "absent.env"))
    assert isinstance(settings, LoggingSettings)
    assert settings.debug_mode is True
    assert settings.log_dir == str(tmp_path)
    assert settings.backup_count == DEFAULT_LOG_BACKUP_COUNT


def test_environment_only_reaches_logging(monkeypatch):
    defaults = RunConfig()
    monkeypatch.setenv("DEBUG", "true")
    for name, value in [("UNITS", "si"), ("SEED", "7"), ("EPSREL", "1e-3"), ("DISCRETE_EM_CONVENTION", "riemann")]:
        monkeypatch.setenv(name, value)
    config = load_config_from_dict({})
    assert config.logging_settings.debug_mode is True
    assert config.units == defaults.units
    assert config.seed == defaults.seed
    assert config.quadrature == defaults.quadrature
    assert config.regulators == defaults.regulators
    assert config.normalization == defaults.normalization
    assert config.monte_carlo == defaults.monte_carlo
