"""Numerical models: utility, risk behavior, pricing, calibration and simulation."""

from .calibration import (
    CalibrationResult,
    CalibrationSystem,
    EconomyStatistics,
    SolverOptions,
    baseline_puzzle_rho,
    build_system,
    consistency_defect,
    jacobian_rank,
    manifold_point,
    manifold_table,
    residuals,
    solve,
    verify_point,
)
from .montecarlo import SimulationConfig, SimulationReport, simulate
from .pricing import (
    EulerInputs,
    GrowthDistribution,
    PricingSolution,
    SufficiencyFactors,
    euler_residual,
    expected_equity_return,
    log_moments_from_arithmetic,
    price_dividend_ratio,
    risk_free_rate,
    solve_prices,
    standard_model,
)
from .risk_behavior import (
    CurveRelation,
    Lottery,
    PremiumMethod,
    PremiumResult,
    Preferences,
    RiskClass,
    WealthScenario,
    classify_investor,
    curve_relation,
    exact_risk_premium,
    exact_risk_premium_delta,
    first_order_risk_premium,
)
from .utility import UtilityCurve

__all__ = [
    'UtilityCurve',
    'Preferences',
    'WealthScenario',
    'Lottery',
    'RiskClass',
    'CurveRelation',
    'PremiumMethod',
    'PremiumResult',
    'classify_investor',
    'curve_relation',
    'exact_risk_premium',
    'exact_risk_premium_delta',
    'first_order_risk_premium',
    'GrowthDistribution',
    'SufficiencyFactors',
    'PricingSolution',
    'EulerInputs',
    'log_moments_from_arithmetic',
    'price_dividend_ratio',
    'expected_equity_return',
    'risk_free_rate',
    'solve_prices',
    'standard_model',
    'euler_residual',
    'EconomyStatistics',
    'CalibrationSystem',
    'CalibrationResult',
    'SolverOptions',
    'build_system',
    'residuals',
    'manifold_point',
    'manifold_table',
    'consistency_defect',
    'jacobian_rank',
    'solve',
    'baseline_puzzle_rho',
    'verify_point',
    'SimulationConfig',
    'SimulationReport',
    'simulate',
]
