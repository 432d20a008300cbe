"""Tests for environment configuration and logging setup."""

import logging

import pytest

from sufficiency_ccapm.core.config import get_config, reset_config, validate_config
from sufficiency_ccapm.core.log import configure_logging


class TestConfig:
    def test_defaults(self):
        config = get_config()
        assert config.mcp_server_name
        assert config.default_beta == 0.99
        assert config.solver_max_iter >= 1
        assert config.mc_workers == 1
        assert get_config() is config

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("CCAPM_BETA", "0.95")
        monkeypatch.setenv("CCAPM_MANIFOLD_SAMPLES", "4")
        monkeypatch.setenv("CCAPM_MC_WORKERS", "3")
        config = reset_config()
        assert config.default_beta == 0.95
        assert config.manifold_samples == 4
        assert config.mc_workers == 3

    def test_debug_wins_over_log_level(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "warning")
        assert reset_config().effective_log_level == "WARNING"
        monkeypatch.setenv("DEBUG", "True")
        assert reset_config().effective_log_level == "DEBUG"


class TestValidateConfig:
    def test_defaults_are_valid(self):
        assert validate_config()

    @pytest.mark.parametrize(
        "name, value",
        [
            ("CCAPM_BETA", "1.5"),
            ("CCAPM_BETA", "0"),
            ("CCAPM_RANK_TOL", "0"),
            ("CCAPM_SOLVER_DAMPING", "2"),
            ("CCAPM_MC_CHUNK", "0"),
        ],
    )
    def test_rejects(self, monkeypatch, capsys, name, value):
        monkeypatch.setenv(name, value)
        reset_config()
        assert not validate_config()
        assert name in capsys.readouterr().err

    def test_unknown_log_level_only_warns(self, monkeypatch, capsys):
        monkeypatch.setenv("LOG_LEVEL", "chatty")
        reset_config()
        assert validate_config()
        assert "falling back to INFO" in capsys.readouterr().err


class TestConfigureLogging:
    def _installed(self):
        return [h for h in logging.getLogger("sufficiency_ccapm").handlers if getattr(h, "_ccapm_handler", False)]

    def test_single_handler(self):
        configure_logging()
        configure_logging()
        assert len(self._installed()) == 1

    def test_level_follows_config(self, monkeypatch):
        monkeypatch.setenv("DEBUG", "true")
        configure_logging(reset_config())
        assert logging.getLogger("sufficiency_ccapm").level == logging.DEBUG
        assert self._installed()[0].level == logging.DEBUG

    def test_unknown_level_falls_back_to_info(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "chatty")
        configure_logging(reset_config())
        assert logging.getLogger("sufficiency_ccapm").level == logging.INFO
