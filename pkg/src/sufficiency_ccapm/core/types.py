"""Type definitions for structured report payloads."""

from typing import Dict, TypedDict


class SystemInfo(TypedDict):
    mu: float
    sigma2: float
    rhs1: float
    rhs2: float
    rhs3: float


class ManifoldRow(TypedDict):
    rho: float
    zeta: float
    xi: float
    r3: float


class PricingInfo(TypedDict, total=False):
    price_dividend_ratio: float
    expected_equity_return: float
    risk_free_rate: float
    log_premium: float
    premium: float


class SimulationInfo(TypedDict, total=False):
    sample_mean_equity_return: float
    equity_return_standard_error: float
    euler_relative_residual: float
    euler_standard_error: float
    risk_free_relative_residual: float
    risk_free_standard_error: float
    closed_form_targets: Dict[str, float]
