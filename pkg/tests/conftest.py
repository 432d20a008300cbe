"""Shared fixtures for the sufficiency CCAPM test suite."""

import logging

import numpy as np
import pytest

from sufficiency_ccapm.core.config import reset_config
from sufficiency_ccapm.models.calibration import REFERENCE_SOLUTION, CalibrationSystem, EconomyStatistics, build_system
from sufficiency_ccapm.models.pricing import GrowthDistribution


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from default configuration and no installed log handler."""
    for name in ("DEBUG", "LOG_LEVEL", "CCAPM_BETA", "CCAPM_MC_PERIODS", "CCAPM_MC_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    logger = logging.getLogger("sufficiency_ccapm")
    for handler in list(logger.handlers):
        if getattr(handler, "_ccapm_handler", False):
            logger.removeHandler(handler)
    reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def printed_system() -> CalibrationSystem:
    return CalibrationSystem.printed_constants()


@pytest.fixture
def table1_system() -> CalibrationSystem:
    return build_system(EconomyStatistics.table1())


@pytest.fixture
def reference_point():
    return REFERENCE_SOLUTION


@pytest.fixture
def printed_dist() -> GrowthDistribution:
    return GrowthDistribution(mu_x=0.017215, sigma2_x=0.001250)


class RecordingServer:
    """Collects what ``register_*`` functions attach, keyed by name."""

    def __init__(self):
        self.functions = {}

    def _record(self, name):
        def decorator(fn):
            self.functions[name] = fn
            return fn
        return decorator

    def tool(self, name=None, **_):
        return self._record(name)

    def resource(self, uri=None, name=None, **_):
        return self._record(name)

    def prompt(self, name=None, **_):
        return self._record(name)


@pytest.fixture(scope="session")
def registered():
    from sufficiency_ccapm.resources import register_resources_and_prompts
    from sufficiency_ccapm.tools import register_calibration_tools, register_pricing_tools, register_risk_tools

    server = RecordingServer()
    for register in (register_calibration_tools, register_pricing_tools, register_risk_tools,
                     register_resources_and_prompts):
        register(server)
    return server.functions
