"""Lognormal equilibrium pricing with sufficiency factors.

Consumption growth x and dividend growth z are i.i.d. and jointly
lognormal. In the exchange-economy equilibrium consumption equals the
dividend, so x = z, the price-dividend ratio v is constant and

    v      = beta*zeta*E(x^(1-rho)) / (1 - beta*zeta*E(x^(1-rho)))
    E(R_e) = E(x) / (beta*zeta*E(x^(1-rho))) = ((v+1)/v) E(x)
    R_f    = 1 / (beta*xi*E(x^(-rho)))

zeta scales the equity investor's uncertain utility, xi the risk-free
investor's. With zeta = xi = 1 everything reduces to the standard
consumption CAPM.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from ..core.errors import DomainError, NoEquilibriumError
from ..core.validation import (
    require_discount_factor,
    require_finite,
    require_non_negative,
    require_positive,
)
from .utility import UtilityCurve


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class GrowthDistribution:
    """Log-moments of consumption growth x and dividend growth z.

    Dividend moments default to the equilibrium condition x = z.
    """

    mu_x: float
    sigma2_x: float
    sigma_xz: Optional[float] = None
    mu_z: Optional[float] = None
    sigma2_z: Optional[float] = None

    def __post_init__(self) -> None:
        require_finite("mu_x", self.mu_x)
        require_non_negative("sigma2_x", self.sigma2_x)
        if self.sigma_xz is None:
            object.__setattr__(self, "sigma_xz", self.sigma2_x)
        if self.mu_z is None:
            object.__setattr__(self, "mu_z", self.mu_x)
        if self.sigma2_z is None:
            object.__setattr__(self, "sigma2_z", self.sigma2_x)
        require_non_negative("sigma2_z", self.z_variance)
        if self.covariance * self.covariance > self.sigma2_x * self.z_variance * (1.0 + 1e-12):
            raise DomainError(
                "covariance of ln x and ln z exceeds the product of their standard deviations"
            )

    @classmethod
    def from_arithmetic(cls, mean_x: float, sd_x: float) -> "GrowthDistribution":
        mu, sigma2 = log_moments_from_arithmetic(mean_x, sd_x)
        return cls(mu_x=mu, sigma2_x=sigma2)

    # typed accessors; __post_init__ fills every optional field
    @property
    def covariance(self) -> float:
        return float(self.sigma_xz)  # type: ignore[arg-type]

    @property
    def z_mean(self) -> float:
        return float(self.mu_z)  # type: ignore[arg-type]

    @property
    def z_variance(self) -> float:
        return float(self.sigma2_z)  # type: ignore[arg-type]

    @property
    def is_equilibrium(self) -> bool:
        return (
            self.covariance == self.sigma2_x
            and self.z_mean == self.mu_x
            and self.z_variance == self.sigma2_x
        )

    @property
    def mean_growth(self) -> float:
        """E(x)."""
        return lognormal_power_moment(self.mu_x, self.sigma2_x, 1.0)


@dataclass(frozen=True)
class SufficiencyFactors:
    zeta: float
    xi: float

    def __post_init__(self) -> None:
        require_positive("zeta", self.zeta)
        require_positive("xi", self.xi)


@dataclass(frozen=True)
class PricingSolution:
    v: float
    expected_equity_return: float
    risk_free_rate: float
    log_premium: float

    @property
    def premium(self) -> float:
        """Premium in levels, E(R_e) - R_f."""
        return self.expected_equity_return - self.risk_free_rate


class LogReturns(NamedTuple):
    log_equity: float
    log_risk_free: float
    log_premium: float


@dataclass(frozen=True)
class EulerInputs:
    """One investor's period-t position.

    ``consumption`` defaults to the dividend (c_t = y_t in equilibrium).
    When an ``endowment`` is given, consumption follows the budget
    constraint c_t = e_t - p_t * theta instead.
    """

    price: float
    dividend: float
    consumption: Optional[float] = None
    holdings: float = 1.0
    endowment: Optional[float] = None

    def __post_init__(self) -> None:
        require_positive("price", self.price)
        require_non_negative("dividend", self.dividend)
        if self.consumption is not None:
            require_positive("consumption", self.consumption)
        require_positive("consumption", self.consumption_now())

    def consumption_now(self) -> float:
        if self.endowment is not None:
            return self.endowment - self.price * self.holdings
        if self.consumption is not None:
            return self.consumption
        return self.dividend


# ===== MOMENTS =====

def log_moments_from_arithmetic(mean_x: float, sd_x: float) -> Tuple[float, float]:
    """Exact lognormal matching of an arithmetic mean and standard deviation.

    Returns:
        (mu, sigma2) with sigma2 = ln(1 + (sd/mean)^2), mu = ln(mean) - sigma2/2
    """
    require_positive("mean_x", mean_x)
    require_non_negative("sd_x", sd_x)
    ratio = sd_x / mean_x
    sigma2 = math.log1p(ratio * ratio)
    mu = math.log(mean_x) - 0.5 * sigma2
    return mu, sigma2


def lognormal_power_moment(mu: float, sigma2: float, a: float) -> float:
    """E(x^a) = exp(a*mu + a^2*sigma2/2)."""
    require_non_negative("sigma2", sigma2)
    return math.exp(a * mu + 0.5 * a * a * sigma2)


def joint_moment(dist: GrowthDistribution, a: float, b: float) -> float:
    """E(x^a z^b) under joint lognormality."""
    log_mean = a * dist.mu_x + b * dist.z_mean
    log_var = a * a * dist.sigma2_x + b * b * dist.z_variance + 2.0 * a * b * dist.covariance
    return math.exp(log_mean + 0.5 * log_var)


# ===== EQUITY =====

def _discounted_equity_moment(beta: float, zeta: float, moment: float, allow_boundary: bool = False) -> float:
    require_discount_factor("beta", beta)
    require_positive("zeta", zeta)
    discounted = beta * zeta * moment
    # at exactly 1 the price is infinite but the expected return keeps its finite limit E(x)
    if discounted > 1.0 or (discounted == 1.0 and not allow_boundary):
        raise NoEquilibriumError(
            f"no equilibrium price: beta*zeta*E = {discounted:.10g} >= 1, the price diverges",
            discounted_moment=discounted,
        )
    return discounted


def price_dividend_ratio(beta: float, zeta: float, rho: float, dist: GrowthDistribution) -> float:
    """Constant price-dividend ratio v of the x = z economy.

    Raises:
        NoEquilibriumError: if beta * zeta * E(x^(1-rho)) >= 1
    """
    m = _discounted_equity_moment(beta, zeta, lognormal_power_moment(dist.mu_x, dist.sigma2_x, 1.0 - rho))
    return m / (1.0 - m)


def price_dividend_ratio_general(beta: float, zeta: float, rho: float, dist: GrowthDistribution) -> float:
    """Price-dividend ratio with a separate dividend process, using E(z x^(-rho))."""
    m = _discounted_equity_moment(beta, zeta, joint_moment(dist, -rho, 1.0))
    return m / (1.0 - m)


def expected_equity_return(beta: float, zeta: float, rho: float, dist: GrowthDistribution) -> float:
    """E(R_e) = E(x) / (beta * zeta * E(x^(1-rho)))."""
    m = _discounted_equity_moment(
        beta, zeta, lognormal_power_moment(dist.mu_x, dist.sigma2_x, 1.0 - rho), allow_boundary=True
    )
    return dist.mean_growth / m


def expected_equity_return_general(beta: float, zeta: float, rho: float, dist: GrowthDistribution) -> float:
    """E(R_e) = E(z) / (beta * zeta * E(z x^(-rho)))."""
    m = _discounted_equity_moment(beta, zeta, joint_moment(dist, -rho, 1.0), allow_boundary=True)
    return lognormal_power_moment(dist.z_mean, dist.z_variance, 1.0) / m


def log_expected_equity_return(beta: float, zeta: float, rho: float, dist: GrowthDistribution) -> float:
    """ln E(R_e) = ln E(x) - ln beta - ln zeta - (1-rho) mu - (1-rho)^2 sigma2 / 2."""
    require_discount_factor("beta", beta)
    require_positive("zeta", zeta)
    one_minus = 1.0 - rho
    return (
        dist.mu_x + 0.5 * dist.sigma2_x
        - math.log(beta)
        - math.log(zeta)
        - one_minus * dist.mu_x
        - 0.5 * one_minus * one_minus * dist.sigma2_x
    )


# ===== RISK-FREE =====

def risk_free_rate(beta: float, xi: float, rho: float, dist: GrowthDistribution) -> float:
    """R_f = 1 / (beta * xi * E(x^(-rho)))."""
    require_discount_factor("beta", beta)
    require_positive("xi", xi)
    return 1.0 / (beta * xi * lognormal_power_moment(dist.mu_x, dist.sigma2_x, -rho))


def log_return_equations(
    beta: float,
    factors: SufficiencyFactors,
    rho: float,
    dist: GrowthDistribution,
) -> LogReturns:
    """Log expected equity return, log risk-free rate and their difference.

        ln E(R_e) = -ln beta - ln zeta + rho mu - rho^2 sigma2/2 + rho sigma_xz
        ln R_f    = -ln beta - ln xi   + rho mu - rho^2 sigma2/2
        premium   = ln xi - ln zeta + rho sigma_xz
    """
    require_discount_factor("beta", beta)
    common = -math.log(beta) + rho * dist.mu_x - 0.5 * rho * rho * dist.sigma2_x
    log_equity = common - math.log(factors.zeta) + rho * dist.covariance
    log_risk_free = common - math.log(factors.xi)
    log_premium = math.log(factors.xi) - math.log(factors.zeta) + rho * dist.covariance
    return LogReturns(log_equity=log_equity, log_risk_free=log_risk_free, log_premium=log_premium)


# ===== COMBINED =====

def solve_prices(
    beta: float,
    factors: SufficiencyFactors,
    rho: float,
    dist: GrowthDistribution,
) -> PricingSolution:
    """All closed forms at once.

    A separate dividend process switches to the E(z x^(-rho)) forms. At the
    boundary beta*zeta*E = 1 the returned v is infinite.
    """
    if dist.is_equilibrium:
        equity = expected_equity_return(beta, factors.zeta, rho, dist)
        ratio = price_dividend_ratio
    else:
        equity = expected_equity_return_general(beta, factors.zeta, rho, dist)
        ratio = price_dividend_ratio_general
    try:
        v = ratio(beta, factors.zeta, rho, dist)
    except NoEquilibriumError as e:
        if e.discounted_moment != 1.0:
            raise
        v = math.inf
    risk_free = risk_free_rate(beta, factors.xi, rho, dist)
    return PricingSolution(
        v=v,
        expected_equity_return=equity,
        risk_free_rate=risk_free,
        log_premium=math.log(equity) - math.log(risk_free),
    )


def standard_model(beta: float, rho: float, dist: GrowthDistribution) -> PricingSolution:
    """Prices without sufficiency adjustment (zeta = xi = 1)."""
    return solve_prices(beta, SufficiencyFactors(zeta=1.0, xi=1.0), rho, dist)


def euler_residual(
    inputs: EulerInputs,
    beta: float,
    eta: float,
    rho: float,
    dist: GrowthDistribution,
) -> float:
    """p_t u'(c_t) - beta*eta*E[(p_{t+1} + y_{t+1}) u'(c_{t+1})].

    Next-period prices follow the equilibrium rule p = v*y, and
    c_{t+1} = c_t x, y_{t+1} = y_t x, so the expectation has the closed
    form (v+1) y_t c_t^(-rho) E(x^(1-rho)).
    """
    require_discount_factor("beta", beta)
    require_non_negative("eta", eta)
    curve = UtilityCurve(rho)
    c_t = inputs.consumption_now()
    marginal = curve.deriv1(c_t)
    lhs = inputs.price * marginal
    if eta == 0.0:
        return lhs
    v_next = price_dividend_ratio(beta, eta, rho, dist)
    growth_moment = lognormal_power_moment(dist.mu_x, dist.sigma2_x, 1.0 - rho)
    expected_payoff = (v_next + 1.0) * inputs.dividend * marginal * growth_moment
    return lhs - beta * eta * expected_payoff


def euler_relative_residual(
    inputs: EulerInputs,
    beta: float,
    eta: float,
    rho: float,
    dist: GrowthDistribution,
) -> float:
    """Euler residual divided by p_t u'(c_t)."""
    curve = UtilityCurve(rho)
    lhs = inputs.price * curve.deriv1(inputs.consumption_now())
    return euler_residual(inputs, beta, eta, rho, dist) / lhs
