"""Calibration of (zeta, xi, rho) to economy-wide return statistics.

The three equations matched are

    r1 = -ln zeta - mu (1-rho) - sigma2 (1-rho)^2 / 2 - rhs1   (expected equity return)
    r2 = -ln xi + mu rho - sigma2 rho^2 / 2 - rhs2             (risk-free rate)
    r3 =  ln xi - ln zeta + sigma2 rho - rhs3                  (log premium)

with rhs1 = ln E(R_e) - ln E(x) + ln beta, rhs2 = ln R_f + ln beta and
rhs3 = ln E(R_e) - ln R_f.

The third equation is the difference of the first two shifted by the
constant mu + sigma2/2, i.e. r3 = r1 - r2 - defect. The Jacobian therefore
has rank two everywhere and the solution set is a curve parameterised by
rho (the manifold): zeta(rho) and xi(rho) follow in closed form from r1 = 0
and r2 = 0, and every manifold point leaves r3 equal to minus the constant
consistency defect.
"""

import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ConvergenceError, DomainError
from ..core.types import SystemInfo
from ..core.validation import require_discount_factor, require_positive
from .pricing import log_moments_from_arithmetic

logger = logging.getLogger(__name__)

DEFAULT_BETA = 0.99
DEFAULT_RANK_TOL = 1e-8
SSE_FLOOR = 1e-20

# Reported solution (zeta, xi, rho) for the Table 1 economy; one point of the manifold.
REFERENCE_SOLUTION = (0.961745, 1.019392, 1.033526)
REFERENCE_TOL_PRINTED = 5e-6
REFERENCE_TOL_DERIVED = 1e-5


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class EconomyStatistics:
    """Sample statistics of the economy (gross returns and growth)."""

    mean_equity_return: float
    mean_risk_free: float
    mean_growth: float
    sd_growth: float
    beta: float = DEFAULT_BETA

    def __post_init__(self) -> None:
        require_positive("mean_equity_return", self.mean_equity_return)
        require_positive("mean_risk_free", self.mean_risk_free)
        require_positive("mean_growth", self.mean_growth)
        if self.sd_growth < 0.0:
            raise DomainError(f"sd_growth must be non-negative, got {self.sd_growth}")
        require_discount_factor("beta", self.beta)

    @classmethod
    def table1(cls, beta: float = DEFAULT_BETA) -> "EconomyStatistics":
        """U.S. economy 1889-1978: E(R_e)=1.0698, R_f=1.008, E(x)=1.018, sd=0.036."""
        return cls(
            mean_equity_return=1.0698,
            mean_risk_free=1.008,
            mean_growth=1.018,
            sd_growth=0.036,
            beta=beta,
        )


@dataclass(frozen=True)
class CalibrationSystem:
    mu: float
    sigma2: float
    rhs1: float
    rhs2: float
    rhs3: float

    @classmethod
    def printed_constants(cls) -> "CalibrationSystem":
        """Coefficients rounded to six decimals, as commonly tabulated."""
        return cls(mu=0.017215, sigma2=0.001250, rhs1=0.039582, rhs2=-0.002082, rhs3=0.059504)

    def as_dict(self) -> SystemInfo:
        return SystemInfo(mu=self.mu, sigma2=self.sigma2, rhs1=self.rhs1, rhs2=self.rhs2, rhs3=self.rhs3)


@dataclass(frozen=True)
class SolverOptions:
    max_iter: int = 100
    step_tol: float = 1e-15
    damping: float = 1.0

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")
        require_positive("step_tol", self.step_tol)
        if not 0.0 < self.damping <= 1.0:
            raise DomainError(f"damping must lie in (0, 1], got {self.damping}")


@dataclass(frozen=True)
class CalibrationResult:
    zeta: float
    xi: float
    rho: float
    sse: float
    iterations: int
    rank_deficient: bool
    consistency_defect: float
    residuals: Tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))


class RankDiagnosis(NamedTuple):
    singular_values: Tuple[float, ...]
    rank: int

    @property
    def smallest_ratio(self) -> float:
        largest = self.singular_values[0]
        return self.singular_values[-1] / largest if largest > 0.0 else 0.0


class ManifoldPoint(NamedTuple):
    rho: float
    zeta: float
    xi: float
    r3: float


class GaussNewtonResult(NamedTuple):
    x: np.ndarray
    sse: float
    iterations: int


# ===== SYSTEM =====

def build_system(stats: EconomyStatistics) -> CalibrationSystem:
    mu, sigma2 = log_moments_from_arithmetic(stats.mean_growth, stats.sd_growth)
    log_equity = math.log(stats.mean_equity_return)
    log_risk_free = math.log(stats.mean_risk_free)
    log_beta = math.log(stats.beta)
    return CalibrationSystem(
        mu=mu,
        sigma2=sigma2,
        rhs1=log_equity - math.log(stats.mean_growth) + log_beta,
        rhs2=log_risk_free + log_beta,
        rhs3=log_equity - log_risk_free,
    )


def _log_residuals(system: CalibrationSystem, log_zeta: float, log_xi: float, rho: float) -> np.ndarray:
    one_minus = 1.0 - rho
    return np.array([
        -log_zeta - system.mu * one_minus - 0.5 * system.sigma2 * one_minus * one_minus - system.rhs1,
        -log_xi + system.mu * rho - 0.5 * system.sigma2 * rho * rho - system.rhs2,
        log_xi - log_zeta + system.sigma2 * rho - system.rhs3,
    ])


def residuals(system: CalibrationSystem, zeta: float, xi: float, rho: float) -> np.ndarray:
    require_positive("zeta", zeta)
    require_positive("xi", xi)
    return _log_residuals(system, math.log(zeta), math.log(xi), rho)


def jacobian(system: CalibrationSystem, rho: float) -> np.ndarray:
    """Jacobian of the residuals in (ln zeta, ln xi, rho); independent of the logs."""
    return np.array([
        [-1.0, 0.0, system.mu + system.sigma2 * (1.0 - rho)],
        [0.0, -1.0, system.mu - system.sigma2 * rho],
        [-1.0, 1.0, system.sigma2],
    ])


def manifold_point(system: CalibrationSystem, rho: float) -> Tuple[float, float]:
    """(zeta, xi) solving the first two equations exactly at this rho."""
    one_minus = 1.0 - rho
    log_zeta = -system.rhs1 - system.mu * one_minus - 0.5 * system.sigma2 * one_minus * one_minus
    log_xi = system.mu * rho - 0.5 * system.sigma2 * rho * rho - system.rhs2
    return math.exp(log_zeta), math.exp(log_xi)


def manifold_table(system: CalibrationSystem, rhos: Sequence[float]) -> List[ManifoldPoint]:
    rows = []
    for rho in rhos:
        zeta, xi = manifold_point(system, rho)
        r3 = float(residuals(system, zeta, xi, rho)[2])
        rows.append(ManifoldPoint(rho=float(rho), zeta=zeta, xi=xi, r3=r3))
    return rows


def consistency_defect(system: CalibrationSystem) -> float:
    """rhs3 - (rhs1 - rhs2 + mu + sigma2/2); r3 is minus this value on the whole manifold."""
    # summed in decimal on the shortest repr of each coefficient, so printed
    # six-decimal constants cancel exactly
    rhs3, rhs1, rhs2, mu, sigma2 = (
        Decimal(repr(float(v))) for v in (system.rhs3, system.rhs1, system.rhs2, system.mu, system.sigma2)
    )
    return float(rhs3 - (rhs1 - rhs2 + mu + sigma2 / 2))


def numerical_rank(matrix: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> RankDiagnosis:
    """Count singular values above ``tol`` times the largest."""
    singular_values = np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False)
    largest = singular_values[0] if singular_values.size else 0.0
    rank = int(np.sum(singular_values > tol * largest)) if largest > 0.0 else 0
    return RankDiagnosis(singular_values=tuple(float(s) for s in singular_values), rank=rank)


def jacobian_rank(
    system: CalibrationSystem,
    point: Tuple[float, float, float],
    tol: float = DEFAULT_RANK_TOL,
) -> RankDiagnosis:
    zeta, xi, rho = point
    require_positive("zeta", zeta)
    require_positive("xi", xi)
    return numerical_rank(jacobian(system, rho), tol)


def verify_point(system: CalibrationSystem, zeta: float, xi: float, rho: float) -> float:
    """Largest absolute residual at a candidate solution."""
    return float(np.max(np.abs(residuals(system, zeta, xi, rho))))


def baseline_puzzle_rho(system: CalibrationSystem) -> float:
    """rho needed to explain the log premium with zeta = xi = 1."""
    if system.sigma2 <= 0.0:
        raise DomainError("baseline rho needs a positive growth variance")
    return system.rhs3 / system.sigma2


# ===== SOLVER =====

def gauss_newton(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    jacobian_fn: Callable[[np.ndarray], np.ndarray],
    x0: Sequence[float],
    options: Optional[SolverOptions] = None,
    sse_target: float = SSE_FLOOR,
) -> GaussNewtonResult:
    """Damped Gauss-Newton with minimum-norm least-squares steps.

    ``np.linalg.lstsq`` returns the minimum-norm solution of J dx = -r, so
    rank-deficient Jacobians move the iterate only within the row space
    of J and leave the null-space coordinate where the guess put it.

    Raises:
        ConvergenceError: if the SSE target is not reached within
            ``options.max_iter`` iterations, or the steps stall above it
    """
    options = options or SolverOptions()
    x = np.asarray(x0, dtype=float).copy()
    r = residual_fn(x)
    sse = float(r @ r)

    for iteration in range(1, options.max_iter + 1):
        if sse <= sse_target:
            return GaussNewtonResult(x=x, sse=sse, iterations=iteration - 1)

        step, _, _, _ = np.linalg.lstsq(jacobian_fn(x), -r, rcond=None)
        x = x + options.damping * step
        r = residual_fn(x)
        sse = float(r @ r)
        step_norm = float(np.linalg.norm(step))
        logger.debug("gauss-newton iter=%d sse=%.3e step=%.3e", iteration, sse, step_norm)

        if step_norm < options.step_tol:
            if sse <= sse_target:
                return GaussNewtonResult(x=x, sse=sse, iterations=iteration)
            logger.warning("gauss-newton stalled at iteration %d with sse=%.3e", iteration, sse)
            raise ConvergenceError(
                f"solver stalled after {iteration} iterations above the SSE target "
                f"(sse={sse:.3e}, target={sse_target:.3e})",
                last_iterate=x.tolist(),
                sse=sse,
                iterations=iteration,
            )

    if sse <= sse_target:
        return GaussNewtonResult(x=x, sse=sse, iterations=options.max_iter)

    logger.warning("gauss-newton stopped after %d iterations with sse=%.3e", options.max_iter, sse)
    raise ConvergenceError(
        f"solver did not converge in {options.max_iter} iterations (sse={sse:.3e})",
        last_iterate=x.tolist(),
        sse=sse,
        iterations=options.max_iter,
    )


def solve(
    system: CalibrationSystem,
    initial_guess: Tuple[float, float, float] = (1.0, 1.0, 2.0),
    options: Optional[SolverOptions] = None,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> CalibrationResult:
    """Solve the calibration system from ``initial_guess`` = (zeta, xi, rho).

    Iterates in (ln zeta, ln xi, rho). The rho of the returned point
    depends on the guess whenever the system is rank deficient.

    Raises:
        ConvergenceError: carrying the last iterate in (zeta, xi, rho)
    """
    zeta0, xi0, rho0 = initial_guess
    require_positive("initial zeta", zeta0)
    require_positive("initial xi", xi0)
    defect = consistency_defect(system)

    def residual_fn(x: np.ndarray) -> np.ndarray:
        return _log_residuals(system, x[0], x[1], x[2])

    def jacobian_fn(x: np.ndarray) -> np.ndarray:
        return jacobian(system, x[2])

    x0 = (math.log(zeta0), math.log(xi0), rho0)
    try:
        outcome = gauss_newton(residual_fn, jacobian_fn, x0, options, max(defect * defect, SSE_FLOOR))
    except ConvergenceError as e:
        log_zeta, log_xi, rho = e.last_iterate
        raise ConvergenceError(
            str(e),
            last_iterate=[math.exp(log_zeta), math.exp(log_xi), rho],
            sse=e.sse,
            iterations=e.iterations,
        ) from e

    log_zeta, log_xi, rho = (float(v) for v in outcome.x)
    diagnosis = numerical_rank(jacobian(system, rho), rank_tol)
    if diagnosis.rank < 3:
        logger.info(
            "calibration system is rank %d: rho=%.10g is one point of a solution manifold",
            diagnosis.rank,
            rho,
        )
    final = residual_fn(outcome.x)
    return CalibrationResult(
        zeta=math.exp(log_zeta),
        xi=math.exp(log_xi),
        rho=rho,
        sse=outcome.sse,
        iterations=outcome.iterations,
        rank_deficient=diagnosis.rank < 3,
        consistency_defect=defect,
        residuals=(float(final[0]), float(final[1]), float(final[2])),
    )
