"""Workflows shared by the command line and the MCP tools.

Each ``cmd_*`` function takes plain values, runs one workflow and returns a
``Report``. Errors propagate as ``CcapmError`` subclasses; callers decide
how to surface them.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core.config import Config, get_config
from .core.errors import DomainError, NoSolutionError, ParameterError
from .core.types import ManifoldRow, PricingInfo, SimulationInfo
from .core.validation import require_non_negative
from .models.calibration import (
    DEFAULT_BETA,
    REFERENCE_SOLUTION,
    REFERENCE_TOL_DERIVED,
    REFERENCE_TOL_PRINTED,
    CalibrationSystem,
    SolverOptions,
    baseline_puzzle_rho,
    build_system,
    consistency_defect,
    jacobian_rank,
    manifold_table,
    residuals,
    solve,
    verify_point,
)
from .models.montecarlo import SimulationConfig, simulate
from .models.pricing import (
    GrowthDistribution,
    SufficiencyFactors,
    log_return_equations,
    solve_prices,
)
from .models.risk_behavior import (
    PremiumMethod,
    Preferences,
    WealthScenario,
    classify_scenario,
    curvature_weighted_premium,
    curve_relation,
    exact_risk_premium,
    exact_risk_premium_delta,
    first_order_error_bound,
    first_order_risk_premium,
)
from .models.utility import UtilityCurve
from .report import Report
from .statsfile import StatsFile, load_bundled

logger = logging.getLogger(__name__)

DEFAULT_GUESS = (1.0, 1.0, 2.0)


def _system_from(
    stats: Optional[StatsFile],
    beta: Optional[float],
    paper_constants: bool,
) -> Tuple[CalibrationSystem, Dict[str, Any], float]:
    """Resolve the calibration system, the input echo and the discount factor."""
    if paper_constants:
        if beta is not None and beta != DEFAULT_BETA:
            raise ParameterError(
                f"the printed constants embed beta = {DEFAULT_BETA}; beta = {beta} needs a statistics file"
            )
        system = CalibrationSystem.printed_constants()
        return system, {"mode": "printed_constants", "beta": DEFAULT_BETA}, REFERENCE_TOL_PRINTED

    stats = stats or load_bundled()
    statistics = stats.to_statistics(beta)
    inputs = {"mode": "statistics", "statistics": stats.as_dict()}
    inputs["statistics"]["beta"] = statistics.beta
    return build_system(statistics), inputs, REFERENCE_TOL_DERIVED


def _manifold_rhos(samples: int, rho_max: float) -> List[float]:
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")
    require_non_negative("rho_max", rho_max)
    return [float(r) for r in np.linspace(0.0, rho_max, samples)]


def _manifold_rows(system: CalibrationSystem, rhos: Sequence[float]) -> List[ManifoldRow]:
    return [
        ManifoldRow(rho=point.rho, zeta=point.zeta, xi=point.xi, r3=point.r3)
        for point in manifold_table(system, rhos)
    ]


def reference_check(system: CalibrationSystem, tolerance: float) -> Dict[str, Any]:
    zeta, xi, rho = REFERENCE_SOLUTION
    worst = verify_point(system, zeta, xi, rho)
    return {
        "zeta": zeta,
        "xi": xi,
        "rho": rho,
        "max_residual": worst,
        "tolerance": tolerance,
        "verified": worst < tolerance,
    }


def cmd_calibrate(
    stats: Optional[StatsFile] = None,
    beta: Optional[float] = None,
    paper_constants: bool = False,
    initial_guess: Optional[Tuple[float, float, float]] = None,
    samples: Optional[int] = None,
    rho_max: Optional[float] = None,
    config: Optional[Config] = None,
) -> Report:
    """Solve the calibration system and describe its solution manifold."""
    config = config or get_config()
    system, inputs, tolerance = _system_from(stats, beta, paper_constants)
    used_beta = inputs["beta"] if paper_constants else inputs["statistics"]["beta"]
    guess = tuple(initial_guess) if initial_guess is not None else DEFAULT_GUESS
    inputs["initial_guess"] = list(guess)

    options = SolverOptions(
        max_iter=config.solver_max_iter,
        step_tol=config.solver_step_tol,
        damping=config.solver_damping,
    )
    result = solve(system, guess, options, config.rank_tolerance)  # type: ignore[arg-type]
    diagnosis = jacobian_rank(system, (result.zeta, result.xi, result.rho), config.rank_tolerance)

    prices = solve_prices(
        used_beta,
        SufficiencyFactors(zeta=result.zeta, xi=result.xi),
        result.rho,
        GrowthDistribution(mu_x=system.mu, sigma2_x=system.sigma2),
    )
    outputs: Dict[str, Any] = {
        "zeta": result.zeta,
        "xi": result.xi,
        "rho": result.rho,
        "sse": result.sse,
        "iterations": result.iterations,
        "residuals": list(result.residuals),
        "baseline_puzzle_rho": baseline_puzzle_rho(system),
        "implied_prices": PricingInfo(
            price_dividend_ratio=prices.v,
            expected_equity_return=prices.expected_equity_return,
            risk_free_rate=prices.risk_free_rate,
            premium=prices.premium,
            log_premium=prices.log_premium,
        ),
    }

    rows = _manifold_rows(
        system,
        _manifold_rhos(
            samples if samples is not None else config.manifold_samples,
            rho_max if rho_max is not None else config.manifold_rho_max,
        ),
    )
    diagnostics: Dict[str, Any] = {
        "system": system.as_dict(),
        "rank": diagnosis.rank,
        "singular_values": list(diagnosis.singular_values),
        "smallest_singular_ratio": diagnosis.smallest_ratio,
        "rank_deficient": result.rank_deficient,
        "consistency_defect": result.consistency_defect,
        "reference_point": reference_check(system, tolerance),
        "manifold": rows,
    }
    if not paper_constants:
        printed = CalibrationSystem.printed_constants()
        diagnostics["printed_constants_max_gap"] = max(
            abs(getattr(system, name) - getattr(printed, name)) for name in ("mu", "sigma2", "rhs1", "rhs2", "rhs3")
        )
        statistics = inputs["statistics"]
        diagnostics["observed_premium"] = statistics["mean_equity_return"] - statistics["mean_risk_free_rate"]
    if result.rank_deficient:
        logger.info("rho is not identified: SSE is the same at every manifold point")

    return Report(command="calibrate", inputs=inputs, outputs=outputs, diagnostics=diagnostics)


def cmd_verify_point(
    zeta: float,
    xi: float,
    rho: float,
    stats: Optional[StatsFile] = None,
    beta: Optional[float] = None,
    paper_constants: bool = False,
) -> Report:
    system, inputs, tolerance = _system_from(stats, beta, paper_constants)
    inputs["point"] = {"zeta": zeta, "xi": xi, "rho": rho}
    values = [float(r) for r in residuals(system, zeta, xi, rho)]
    worst = max(abs(r) for r in values)
    return Report(
        command="verify-point",
        inputs=inputs,
        outputs={"residuals": values, "max_residual": worst, "verified": worst < tolerance},
        diagnostics={"tolerance": tolerance, "consistency_defect": consistency_defect(system)},
    )


def cmd_manifold(
    rhos: Optional[Sequence[float]] = None,
    stats: Optional[StatsFile] = None,
    beta: Optional[float] = None,
    paper_constants: bool = False,
    config: Optional[Config] = None,
) -> Report:
    config = config or get_config()
    system, inputs, _ = _system_from(stats, beta, paper_constants)
    grid = list(rhos) if rhos else _manifold_rhos(config.manifold_samples, config.manifold_rho_max)
    return Report(
        command="manifold",
        inputs=inputs,
        outputs={"manifold": _manifold_rows(system, grid)},
        diagnostics={"consistency_defect": consistency_defect(system)},
    )


def _distribution(
    mu: Optional[float],
    sigma2: Optional[float],
    sigma_xz: Optional[float] = None,
    mu_z: Optional[float] = None,
    sigma2_z: Optional[float] = None,
) -> GrowthDistribution:
    if mu is None or sigma2 is None:
        table = build_system(load_bundled().to_statistics())
        mu = table.mu if mu is None else mu
        sigma2 = table.sigma2 if sigma2 is None else sigma2
    return GrowthDistribution(mu_x=mu, sigma2_x=sigma2, sigma_xz=sigma_xz, mu_z=mu_z, sigma2_z=sigma2_z)


def cmd_price(
    rho: float,
    zeta: float = 1.0,
    xi: float = 1.0,
    beta: Optional[float] = None,
    mu: Optional[float] = None,
    sigma2: Optional[float] = None,
    sigma_xz: Optional[float] = None,
    mu_z: Optional[float] = None,
    sigma2_z: Optional[float] = None,
) -> Report:
    """Closed-form prices; growth moments default to the bundled Table 1 economy."""
    beta = beta if beta is not None else get_config().default_beta
    dist = _distribution(mu, sigma2, sigma_xz, mu_z, sigma2_z)
    factors = SufficiencyFactors(zeta=zeta, xi=xi)
    solution = solve_prices(beta, factors, rho, dist)
    logs = log_return_equations(beta, factors, rho, dist)
    return Report(
        command="price",
        inputs={
            "beta": beta,
            "zeta": zeta,
            "xi": xi,
            "rho": rho,
            "mu_x": dist.mu_x,
            "sigma2_x": dist.sigma2_x,
            "sigma_xz": dist.covariance,
            "mu_z": dist.z_mean,
            "sigma2_z": dist.z_variance,
        },
        outputs=dict(PricingInfo(
            price_dividend_ratio=solution.v,
            expected_equity_return=solution.expected_equity_return,
            risk_free_rate=solution.risk_free_rate,
            log_premium=solution.log_premium,
            premium=solution.premium,
        )),
        diagnostics={
            "log_equity_return": logs.log_equity,
            "log_risk_free_rate": logs.log_risk_free,
            "equilibrium_dividends": dist.is_equilibrium,
        },
    )


def cmd_premium(
    rho: float,
    w_s: float,
    w_ns: float,
    beta: Optional[float] = None,
    eta: float = 1.0,
    method: str = PremiumMethod.EXACT.value,
    literal: bool = False,
    delta: Optional[float] = None,
) -> Report:
    """Risk premium by the requested method, with exact and first-order side by side.

    With ``delta`` the prediction is credited beta * u(w_ns) - delta instead
    of beta * eta * u(w_ns); the two adjustments cannot be combined.
    """
    beta = beta if beta is not None else get_config().default_beta
    try:
        chosen = PremiumMethod.from_flag(method)
    except ValueError:
        choices = ", ".join(["eq27"] + [m.value for m in PremiumMethod])
        raise ParameterError(f"unknown premium method '{method}', expected one of: {choices}") from None
    if delta is not None and eta != 1.0:
        raise ParameterError("give either eta or delta, not both")
    curve = UtilityCurve(rho)
    prefs = Preferences(beta=beta, eta=eta)
    u_ws, u_wns = curve.value(w_s), curve.value(w_ns)
    if delta is not None:
        # beta * (u - delta / beta) is the offset target with eta = 1
        u_wns = u_wns - delta / beta

    first = first_order_risk_premium(w_s, u_ws, curve.deriv1(w_s), u_wns, prefs)
    try:
        if delta is None:
            exact = exact_risk_premium(curve, w_s, w_ns, prefs)
        else:
            exact = exact_risk_premium_delta(curve, w_s, w_ns, beta, delta)
    except NoSolutionError:
        if chosen is PremiumMethod.EXACT:
            raise
        exact = None

    if chosen is PremiumMethod.EXACT:
        result = exact
    elif chosen is PremiumMethod.FIRST_ORDER:
        result = first
    else:
        result = curvature_weighted_premium(curve, w_s, u_wns, prefs, literal=literal)
    assert result is not None

    diagnostics: Dict[str, Any] = {
        "direction": WealthScenario(w_certain=w_s, w_uncertain=w_ns).direction.value,
        "first_order_premium": first.premium,
        "exact_premium": exact.premium if exact else None,
    }
    if exact is not None:
        diagnostics["first_order_minus_exact"] = first.premium - exact.premium
        diagnostics["first_order_error_bound"] = first_order_error_bound(curve, w_s, exact.premium)

    return Report(
        command="premium",
        inputs={
            "rho": rho,
            "w_s": w_s,
            "w_ns": w_ns,
            "beta": beta,
            "eta": eta,
            "delta": delta,
            "method": chosen.value,
            "literal": literal,
        },
        outputs={
            "premium": result.premium,
            "certainty_equivalent": result.certainty_equivalent,
            "method": result.method.value,
        },
        diagnostics=diagnostics,
    )


def cmd_classify(
    rho: float,
    w_t: float,
    w_T: float,
    beta: Optional[float] = None,
    eta: float = 1.0,
    tol: Optional[float] = None,
) -> Report:
    config = get_config()
    beta = beta if beta is not None else config.default_beta
    tol = tol if tol is not None else config.classify_tolerance
    curve = UtilityCurve(rho)
    prefs = Preferences(beta=beta, eta=eta)
    scenario = WealthScenario(w_certain=w_t, w_uncertain=w_T)
    risk_class = classify_scenario(curve, scenario, prefs, tol)

    certain = curve.value(w_t)
    uncertain = prefs.weight * curve.value(w_T)
    outputs: Dict[str, Any] = {
        "classification": risk_class.value,
        "certain_utility": certain,
        "adjusted_uncertain_utility": uncertain,
        "utility_gap": certain - uncertain,
    }
    diagnostics: Dict[str, Any] = {"direction": scenario.direction.value, "tolerance": tol}
    if not curve.is_logarithmic:
        diagnostics["curve_relation"] = curve_relation(eta, rho).value
    return Report(
        command="classify",
        inputs={"rho": rho, "w_t": w_t, "w_T": w_T, "beta": beta, "eta": eta},
        outputs=outputs,
        diagnostics=diagnostics,
    )


def cmd_simulate(
    rho: float,
    zeta: float = 1.0,
    xi: float = 1.0,
    beta: Optional[float] = None,
    mu: Optional[float] = None,
    sigma2: Optional[float] = None,
    num_periods: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> Report:
    config = get_config()
    sim_config = SimulationConfig(
        num_periods=num_periods if num_periods is not None else config.mc_num_periods,
        seed=seed if seed is not None else config.mc_seed,
        beta=beta if beta is not None else config.default_beta,
        zeta=zeta,
        xi=xi,
        rho=rho,
        dist=_distribution(mu, sigma2),
        workers=workers if workers is not None else config.mc_workers,
        chunk_size=chunk_size if chunk_size is not None else config.mc_chunk_size,
    )
    sim = simulate(sim_config)
    targets = sim.closed_form_targets
    return Report(
        command="simulate",
        inputs={
            "beta": sim_config.beta,
            "zeta": zeta,
            "xi": xi,
            "rho": rho,
            "mu_x": sim_config.dist.mu_x,
            "sigma2_x": sim_config.dist.sigma2_x,
            "num_periods": sim_config.num_periods,
            "chunk_size": sim_config.chunk_size,
        },
        outputs=dict(SimulationInfo(
            sample_mean_equity_return=sim.sample_mean_equity_return,
            equity_return_standard_error=sim.equity_return_standard_error,
            euler_relative_residual=sim.euler_relative_residual,
            euler_standard_error=sim.euler_standard_error,
            risk_free_relative_residual=sim.risk_free_relative_residual,
            risk_free_standard_error=sim.risk_free_standard_error,
        )),
        diagnostics={
            "closed_form_targets": dict(targets),
            "equity_z_score": sim.equity_z_score(),
            "euler_z_score": sim.euler_z_score(),
            "within_three_standard_errors": abs(sim.equity_z_score()) <= 3.0 and abs(sim.euler_z_score()) <= 3.0,
            "generator": sim.generator,
        },
        seed=sim.seed,
    )
