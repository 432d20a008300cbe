"""Risk behavior under a sufficiency factor.

An investor compares the utility of certain wealth u(w_t) against the
discounted, sufficiency-adjusted utility of an uncertain target
beta * eta * u(w_T). The sufficiency factor eta scales the utility the
investor is willing to credit to a prediction it does not fully trust.

This module holds the classifier, the curve-position predicates, the
two-outcome lottery, the exact and first-order risk premia and the
second-order expansions of the risk-aversion measures in terms of the
premium and the expected gain of the lottery.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from ..core.errors import (
    DegenerateInputError,
    DomainError,
    NoSolutionError,
    SingularExpansionError,
)
from ..core.validation import (
    require_discount_factor,
    require_finite,
    require_non_negative,
    require_positive,
    require_probability,
)
from .utility import UtilityCurve

DEFAULT_NEUTRAL_TOL = 1e-9


class RiskClass(str, Enum):
    RISK_AVERSE = "RiskAverse"
    RISK_LOVING = "RiskLoving"
    RISK_NEUTRAL = "RiskNeutral"


class CurveRelation(str, Enum):
    """Position of eta * u(w) relative to u(w)."""

    BELOW = "Below"
    ABOVE = "Above"
    COINCIDES = "Coincides"


class Direction(str, Enum):
    UPWARD = "upward"
    DOWNWARD = "downward"


class PremiumMethod(str, Enum):
    EXACT = "exact"
    FIRST_ORDER = "first_order"
    EQ27 = "paper_eq27"

    @classmethod
    def from_flag(cls, value: str) -> "PremiumMethod":
        """Accept the enum value or the short command-line spelling ``eq27``."""
        if value == "eq27":
            return cls.EQ27
        return cls(value)


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class Preferences:
    """Subjective discount factor and sufficiency factor of one decision."""

    beta: float
    eta: float

    def __post_init__(self) -> None:
        require_discount_factor("beta", self.beta)
        require_positive("eta", self.eta)

    @property
    def weight(self) -> float:
        """beta * eta, the multiplier applied to uncertain utility."""
        return self.beta * self.eta


@dataclass(frozen=True)
class WealthScenario:
    """Certain wealth and the guessed uncertain wealth it may move to."""

    w_certain: float
    w_uncertain: float

    def __post_init__(self) -> None:
        require_positive("w_certain", self.w_certain)
        require_positive("w_uncertain", self.w_uncertain)

    @property
    def direction(self) -> Direction:
        if self.w_uncertain >= self.w_certain:
            return Direction.UPWARD
        return Direction.DOWNWARD


class LotteryStats(NamedTuple):
    expected_gain: float
    variance: float
    implied_wealth: float


@dataclass(frozen=True)
class Lottery:
    """Two-outcome lottery: ``low_outcome`` with probability ``prob_low``,
    ``high_outcome`` otherwise, measured against ``baseline`` wealth."""

    low_outcome: float
    high_outcome: float
    prob_low: float
    baseline: float

    def __post_init__(self) -> None:
        require_non_negative("low_outcome", self.low_outcome)
        require_finite("high_outcome", self.high_outcome)
        require_probability("prob_low", self.prob_low)
        require_positive("baseline", self.baseline)

    @classmethod
    def symmetric(cls, baseline: float, spread: float) -> "Lottery":
        """Fair gamble: baseline +/- spread with equal probability."""
        return cls(
            low_outcome=baseline - spread,
            high_outcome=baseline + spread,
            prob_low=0.5,
            baseline=baseline,
        )


@dataclass(frozen=True)
class PremiumResult:
    premium: float
    certainty_equivalent: float
    method: PremiumMethod


@dataclass(frozen=True)
class ExpansionInputs:
    """Evaluations feeding the second-order premium expansions.

    Exactly one of ``eta`` (multiplicative sufficiency factor) or ``delta``
    (constant utility offset) is needed by each expansion.
    """

    w_s: float
    expected_gain: float
    pi: float
    beta: float
    curve_value: float
    curve_slope: float
    eta: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        require_positive("w_s", self.w_s)
        require_finite("expected_gain", self.expected_gain)
        require_finite("pi", self.pi)
        require_positive("beta", self.beta)
        require_finite("curve_value", self.curve_value)
        require_positive("curve_slope", self.curve_slope)
        if self.eta is not None:
            require_positive("eta", self.eta)
        if self.delta is not None:
            require_finite("delta", self.delta)

    @classmethod
    def from_curve(
        cls,
        curve: UtilityCurve,
        w_s: float,
        expected_gain: float,
        pi: float,
        beta: float,
        eta: Optional[float] = None,
        delta: Optional[float] = None,
    ) -> "ExpansionInputs":
        return cls(
            w_s=w_s,
            expected_gain=expected_gain,
            pi=pi,
            beta=beta,
            curve_value=curve.value(w_s),
            curve_slope=curve.deriv1(w_s),
            eta=eta,
            delta=delta,
        )


# ===== CLASSIFICATION =====

def classify_investor(
    curve: UtilityCurve,
    w_certain: float,
    w_uncertain: float,
    prefs: Preferences,
    tol: float = DEFAULT_NEUTRAL_TOL,
) -> RiskClass:
    """Classify by comparing u(w_t) with beta * eta * u(w_T).

    Equality is accepted within ``tol * max(1, |u(w_t)|)``.
    """
    require_positive("tol", tol)
    certain = curve.value(w_certain)
    uncertain = prefs.weight * curve.value(w_uncertain)
    gap = certain - uncertain
    if abs(gap) <= tol * max(1.0, abs(certain)):
        return RiskClass.RISK_NEUTRAL
    return RiskClass.RISK_AVERSE if gap > 0.0 else RiskClass.RISK_LOVING


def classify_scenario(
    curve: UtilityCurve,
    scenario: WealthScenario,
    prefs: Preferences,
    tol: float = DEFAULT_NEUTRAL_TOL,
) -> RiskClass:
    return classify_investor(curve, scenario.w_certain, scenario.w_uncertain, prefs, tol)


def sufficiency_factor_from_allocation(base_utility: float, allocated: float) -> float:
    """eta such that eta * u(w_T) = u(w_T) + allocated.

    Note the sign flip when u(w_T) < 0 (rho > 1): a negative allocation
    then raises eta above one.
    """
    require_finite("allocated", allocated)
    if base_utility == 0.0:
        raise DegenerateInputError("sufficiency factor is undefined for zero base utility")
    return (base_utility + allocated) / base_utility


def curve_relation(eta: float, rho: float) -> CurveRelation:
    """Whether eta * u(w) lies below, above or on u(w) for every w > 0."""
    require_positive("eta", eta)
    require_non_negative("rho", rho)
    if rho == 1.0:
        raise DomainError("curve relation is undefined for logarithmic utility (rho = 1)")
    if eta == 1.0:
        return CurveRelation.COINCIDES
    if (eta < 1.0) == (rho < 1.0):
        return CurveRelation.BELOW
    return CurveRelation.ABOVE


# ===== LOTTERIES AND PREMIA =====

def lottery_stats(lottery: Lottery) -> LotteryStats:
    t = lottery.prob_low
    mean_outcome = t * lottery.low_outcome + (1.0 - t) * lottery.high_outcome
    expected_gain = mean_outcome - lottery.baseline
    spread = lottery.high_outcome - lottery.low_outcome
    variance = t * (1.0 - t) * spread * spread
    return LotteryStats(
        expected_gain=expected_gain,
        variance=variance,
        implied_wealth=lottery.baseline + expected_gain,
    )


def _premium_at_target(curve: UtilityCurve, w_s: float, target: float) -> PremiumResult:
    try:
        ce = curve.inverse(target)
    except DomainError as e:
        raise NoSolutionError(f"no certainty equivalent: {e}") from e
    return PremiumResult(premium=w_s - ce, certainty_equivalent=ce, method=PremiumMethod.EXACT)


def exact_risk_premium(
    curve: UtilityCurve,
    w_s: float,
    w_ns: float,
    prefs: Preferences,
) -> PremiumResult:
    """Solve u(w_s - pi) = beta * eta * u(w_ns) for pi.

    Downward scenarios (w_ns < w_s) take the same path.

    Raises:
        NoSolutionError: if the adjusted target utility has no pre-image
    """
    require_positive("w_s", w_s)
    return _premium_at_target(curve, w_s, prefs.weight * curve.value(w_ns))


def exact_risk_premium_delta(
    curve: UtilityCurve,
    w_s: float,
    w_i: float,
    beta: float,
    delta: float,
) -> PremiumResult:
    """Solve u(w_s - pi) = beta * u(w_i) - delta for pi.

    A positive delta lowers the credited utility of the prediction by a
    constant rather than by a factor, so the premium grows with delta.

    Raises:
        NoSolutionError: if the offset target utility has no pre-image
    """
    require_positive("w_s", w_s)
    require_discount_factor("beta", beta)
    require_finite("delta", delta)
    target = beta * curve.value(w_i) - delta
    return _premium_at_target(curve, w_s, target)


def first_order_risk_premium(
    w_s: float,
    u_ws: float,
    slope_ws: float,
    u_wns: float,
    prefs: Preferences,
) -> PremiumResult:
    """pi ~= (u(w_s) - beta * eta * u(w_ns)) / u'(w_s)."""
    require_positive("slope_ws", slope_ws)
    pi = (u_ws - prefs.weight * u_wns) / slope_ws
    return PremiumResult(premium=pi, certainty_equivalent=w_s - pi, method=PremiumMethod.FIRST_ORDER)


def curvature_weighted_premium(
    curve: UtilityCurve,
    w_s: float,
    u_wns: float,
    prefs: Preferences,
    literal: bool = False,
) -> PremiumResult:
    """First-order premium written as a risk-aversion coefficient times the
    utility gap over u''(w_s).

    With the absolute measure alpha = -u''/u' the ratio alpha / u'' is
    -1/u' and the result equals ``first_order_risk_premium``. With
    ``literal=True`` the relative coefficient rho = alpha * w_s is used
    instead, which scales the premium by w_s.
    """
    require_positive("w_s", w_s)
    curvature = curve.deriv2(w_s)
    if curvature == 0.0:
        raise DegenerateInputError("curvature-weighted premium needs u''(w_s) != 0 (rho > 0)")
    gap = prefs.weight * u_wns - curve.value(w_s)
    coefficient = curve.relative_risk_aversion(w_s) if literal else curve.absolute_risk_aversion(w_s)
    pi = coefficient * gap / curvature
    return PremiumResult(
        premium=pi,
        certainty_equivalent=w_s - pi,
        method=PremiumMethod.EQ27,
    )


def first_order_error_bound(curve: UtilityCurve, w_s: float, pi_exact: float) -> float:
    """C * pi^2 with C = sup|u''| / (2 u'(w_s)) over [w_s - pi, w_s].

    |u''| is decreasing in wealth for CRRA, so the supremum sits at the
    lower end of the bracket.
    """
    lower = min(w_s, w_s - pi_exact)
    sup_curvature = abs(curve.deriv2(lower))
    return sup_curvature / (2.0 * curve.deriv1(w_s)) * pi_exact * pi_exact


def fair_gamble_rho(pi: float, w_s: float, variance: float) -> float:
    """rho = 2 pi w_s / sigma_z^2 for a zero-mean gamble."""
    require_finite("pi", pi)
    require_finite("w_s", w_s)
    require_positive("variance", variance)
    return 2.0 * pi * w_s / variance


def delta_from_eta(beta: float, eta: float, u_wi: float) -> float:
    """Constant offset delta making beta*u(w_i) - delta = beta*eta*u(w_i)."""
    return beta * (1.0 - eta) * u_wi


# ===== SECOND-ORDER EXPANSIONS =====

def _check_gain(inputs: ExpansionInputs) -> float:
    if inputs.expected_gain == 0.0:
        raise SingularExpansionError("expansion is singular for zero expected gain")
    return inputs.expected_gain


def alpha_expansion_delta(inputs: ExpansionInputs) -> float:
    """Absolute risk aversion implied by a constant utility offset delta."""
    if inputs.delta is None:
        raise DomainError("alpha_expansion_delta needs a delta")
    ez = _check_gain(inputs)
    beta, slope = inputs.beta, inputs.curve_slope
    ez2 = ez * ez
    return (
        2.0 * inputs.pi / (beta * ez2)
        + 2.0 / ez
        - 2.0 * inputs.delta / (beta * slope * ez2)
        + 2.0 * inputs.curve_value * (beta - 1.0) / (beta * slope * ez2)
    )


def alpha_expansion_eta(inputs: ExpansionInputs) -> float:
    """Absolute risk aversion implied by a multiplicative sufficiency factor."""
    if inputs.eta is None:
        raise DomainError("alpha_expansion_eta needs an eta")
    ez = _check_gain(inputs)
    weight = inputs.beta * inputs.eta
    ez2 = ez * ez
    return (
        2.0 * inputs.pi / (weight * ez2)
        + 2.0 / ez
        + (weight - 1.0) * 2.0 * inputs.curve_value / (weight * inputs.curve_slope * ez2)
    )


def rho_expansion_delta(inputs: ExpansionInputs) -> float:
    return inputs.w_s * alpha_expansion_delta(inputs)


def rho_expansion_eta(inputs: ExpansionInputs) -> float:
    return inputs.w_s * alpha_expansion_eta(inputs)


def eta_from_expansion(
    w_s: float,
    expected_gain: float,
    pi: float,
    beta: float,
    rho: float,
    u_ws: float,
    slope_ws: float,
) -> float:
    """Invert ``rho_expansion_eta`` for eta.

    Raises:
        DegenerateInputError: if the denominator vanishes
    """
    ez = expected_gain
    numerator = 2.0 * pi * w_s * slope_ws - 2.0 * w_s * u_ws
    terms = (
        rho * beta * slope_ws * ez * ez,
        -2.0 * w_s * ez * beta * slope_ws,
        -2.0 * w_s * beta * u_ws,
    )
    denominator = math.fsum(terms)
    scale = max(abs(t) for t in terms)
    if scale == 0.0 or abs(denominator) <= 1e-12 * scale:
        raise DegenerateInputError(
            f"sufficiency factor is undefined: denominator {denominator!r} vanishes"
        )
    return numerator / denominator
