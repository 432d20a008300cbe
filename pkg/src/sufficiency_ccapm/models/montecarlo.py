"""Seeded Monte Carlo of the i.i.d. lognormal exchange economy.

The period range is cut into fixed-size chunks. Chunk k draws from its own
PCG64 stream seeded by the k-th child of ``SeedSequence(seed)``, so the
draws do not depend on how many workers process the chunks. Partial sums
are reduced in chunk order with numpy's pairwise summation.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Sequence

import numpy as np

from ..core.errors import DomainError
from ..core.validation import require_discount_factor, require_positive
from .pricing import GrowthDistribution, expected_equity_return, price_dividend_ratio, risk_free_rate

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 65536
GENERATOR_NAME = "numpy PCG64 (SeedSequence.spawn per chunk), ziggurat standard_normal"
_MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class SimulationConfig:
    num_periods: int
    seed: int
    beta: float
    zeta: float
    xi: float
    rho: float
    dist: GrowthDistribution
    workers: int = 1
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        if self.num_periods < 1:
            raise DomainError(f"num_periods must be at least 1, got {self.num_periods}")
        if not 0 <= self.seed < _MAX_SEED:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")
        if self.chunk_size < 1:
            raise DomainError(f"chunk_size must be at least 1, got {self.chunk_size}")
        require_discount_factor("beta", self.beta)
        require_positive("zeta", self.zeta)
        require_positive("xi", self.xi)


@dataclass(frozen=True)
class SimulationReport:
    sample_mean_equity_return: float
    equity_return_standard_error: float
    euler_relative_residual: float
    euler_standard_error: float
    risk_free_relative_residual: float
    risk_free_standard_error: float
    closed_form_targets: Dict[str, float] = field(default_factory=dict)
    num_periods: int = 0
    seed: int = 0
    generator: str = GENERATOR_NAME

    def to_dict(self) -> dict:
        return asdict(self)

    def equity_z_score(self) -> float:
        """Distance of the sample mean from the closed form in standard errors."""
        return z_score(
            self.sample_mean_equity_return,
            self.closed_form_targets["expected_equity_return"],
            self.equity_return_standard_error,
        )

    def euler_z_score(self) -> float:
        return z_score(self.euler_relative_residual, 0.0, self.euler_standard_error)


def z_score(value: float, target: float, standard_error: float) -> float:
    gap = value - target
    if standard_error == 0.0:
        return 0.0 if gap == 0.0 else math.copysign(math.inf, gap)
    return gap / standard_error


class _Moments(NamedTuple):
    """Per-chunk count, sum and sum of squared deviations about the chunk mean."""

    count: int
    total: np.ndarray
    m2: np.ndarray


class _Estimate(NamedTuple):
    mean: float
    standard_error: float


def _chunk_sizes(num_periods: int, chunk_size: int) -> List[int]:
    full, rest = divmod(num_periods, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _simulate_chunk(
    seed_seq: np.random.SeedSequence,
    size: int,
    config: SimulationConfig,
    gross_growth: float,
    risk_free: float,
) -> _Moments:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    log_x = config.dist.mu_x + math.sqrt(config.dist.sigma2_x) * rng.standard_normal(size)
    rho = config.rho

    samples = np.empty((3, size))
    samples[0] = gross_growth * np.exp(log_x)
    samples[1] = config.beta * config.zeta * gross_growth * np.exp((1.0 - rho) * log_x) - 1.0
    samples[2] = config.beta * config.xi * risk_free * np.exp(-rho * log_x) - 1.0

    total = np.sum(samples, axis=1)
    deviations = samples - (total / size)[:, None]
    m2 = np.sum(deviations * deviations, axis=1)
    return _Moments(count=size, total=total, m2=m2)


def _reduce(parts: Sequence[_Moments]) -> List[_Estimate]:
    counts = np.array([p.count for p in parts], dtype=float)
    totals = np.stack([p.total for p in parts])
    m2s = np.stack([p.m2 for p in parts])
    n = float(np.sum(counts))

    means = np.sum(totals, axis=0) / n
    chunk_means = totals / counts[:, None]
    spread = chunk_means - means[None, :]
    m2 = np.sum(m2s + counts[:, None] * spread * spread, axis=0)

    estimates = []
    for mean, sq in zip(means, m2):
        if n > 1:
            se = math.sqrt(max(float(sq), 0.0) / (n - 1.0) / n)
        else:
            se = 0.0
        estimates.append(_Estimate(mean=float(mean), standard_error=se))
    return estimates


def _degenerate_estimates(config: SimulationConfig, gross_growth: float, risk_free: float) -> List[_Estimate]:
    # sigma2 = 0: every period draws x = exp(mu)
    mu, rho = config.dist.mu_x, config.rho
    equity = gross_growth * math.exp(mu)
    euler = config.beta * config.zeta * gross_growth * math.exp((1.0 - rho) * mu) - 1.0
    risk_free_check = config.beta * config.xi * risk_free * math.exp(-rho * mu) - 1.0
    return [_Estimate(equity, 0.0), _Estimate(euler, 0.0), _Estimate(risk_free_check, 0.0)]


def simulate(config: SimulationConfig) -> SimulationReport:
    """Sample the economy and compare against the closed forms.

    Per period the equity return is ((v+1)/v) x. The Euler check averages
    beta*zeta*((v+1)/v)*x^(1-rho) - 1 and the risk-free check averages
    beta*xi*R_f*x^(-rho) - 1; both have expectation zero at equilibrium
    prices.

    Raises:
        NoEquilibriumError: if beta * zeta * E(x^(1-rho)) >= 1
    """
    v = price_dividend_ratio(config.beta, config.zeta, config.rho, config.dist)
    gross_growth = (v + 1.0) / v
    risk_free = risk_free_rate(config.beta, config.xi, config.rho, config.dist)
    targets = {
        "price_dividend_ratio": v,
        "expected_equity_return": expected_equity_return(config.beta, config.zeta, config.rho, config.dist),
        "risk_free_rate": risk_free,
        "euler_relative_residual": 0.0,
        "risk_free_relative_residual": 0.0,
    }

    if config.dist.sigma2_x == 0.0:
        equity, euler, rf_check = _degenerate_estimates(config, gross_growth, risk_free)
    else:
        sizes = _chunk_sizes(config.num_periods, config.chunk_size)
        seeds = np.random.SeedSequence(config.seed).spawn(len(sizes))
        logger.debug(
            "simulating %d periods in %d chunks on %d workers",
            config.num_periods,
            len(sizes),
            config.workers,
        )

        def run(index: int) -> _Moments:
            return _simulate_chunk(seeds[index], sizes[index], config, gross_growth, risk_free)

        if config.workers == 1:
            parts = [run(i) for i in range(len(sizes))]
        else:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                parts = list(pool.map(run, range(len(sizes))))
        equity, euler, rf_check = _reduce(parts)

    return SimulationReport(
        sample_mean_equity_return=equity.mean,
        equity_return_standard_error=equity.standard_error,
        euler_relative_residual=euler.mean,
        euler_standard_error=euler.standard_error,
        risk_free_relative_residual=rf_check.mean,
        risk_free_standard_error=rf_check.standard_error,
        closed_form_targets=targets,
        num_periods=config.num_periods,
        seed=config.seed,
    )
