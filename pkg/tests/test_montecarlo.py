"""Tests for the seeded Monte Carlo cross-check."""

import math

import pytest

from sufficiency_ccapm.core.errors import DomainError, NoEquilibriumError
from sufficiency_ccapm.models.montecarlo import GENERATOR_NAME, SimulationConfig, simulate, z_score
from sufficiency_ccapm.models.pricing import GrowthDistribution

SEED = 20240917


def reported_point_config(printed_dist, **overrides):
    values = dict(
        num_periods=1_000_000,
        seed=SEED,
        beta=0.99,
        zeta=0.961745,
        xi=1.019392,
        rho=1.033526,
        dist=printed_dist,
    )
    values.update(overrides)
    return SimulationConfig(**values)


class TestSimulate:
    def test_reported_point_matches_closed_form(self, printed_dist):
        report = simulate(reported_point_config(printed_dist))
        target = report.closed_form_targets["expected_equity_return"]
        assert target == pytest.approx(1.0698, abs=1e-3)
        assert abs(report.sample_mean_equity_return - target) <= 3.0 * report.equity_return_standard_error
        assert abs(report.equity_z_score()) <= 3.0

    def test_euler_residual_vanishes(self, printed_dist):
        report = simulate(reported_point_config(printed_dist))
        assert abs(report.euler_relative_residual) <= 3.0 * report.euler_standard_error
        assert abs(report.risk_free_relative_residual) <= 3.0 * report.risk_free_standard_error

    def test_same_seed_is_bit_identical(self, printed_dist):
        config = reported_point_config(printed_dist, num_periods=200_000)
        assert simulate(config) == simulate(config)

    def test_report_independent_of_worker_count(self, printed_dist):
        serial = simulate(reported_point_config(printed_dist, num_periods=100_000, chunk_size=10_000, workers=1))
        parallel = simulate(reported_point_config(printed_dist, num_periods=100_000, chunk_size=10_000, workers=4))
        assert serial == parallel

    def test_different_seeds_differ(self, printed_dist):
        a = simulate(reported_point_config(printed_dist, num_periods=10_000))
        b = simulate(reported_point_config(printed_dist, num_periods=10_000, seed=SEED + 1))
        assert a.sample_mean_equity_return != b.sample_mean_equity_return

    def test_standard_error_shrinks_as_root_n(self, printed_dist):
        small = simulate(reported_point_config(printed_dist, num_periods=10_000))
        large = simulate(reported_point_config(printed_dist, num_periods=1_000_000))
        ratio = small.equity_return_standard_error / large.equity_return_standard_error
        assert 9.0 <= ratio <= 11.0

    def test_degenerate_distribution(self):
        dist = GrowthDistribution(mu_x=0.01, sigma2_x=0.0)
        report = simulate(
            SimulationConfig(num_periods=1000, seed=SEED, beta=0.9, zeta=1.0, xi=1.0, rho=2.0, dist=dist)
        )
        v = report.closed_form_targets["price_dividend_ratio"]
        assert report.sample_mean_equity_return == pytest.approx((v + 1.0) / v * math.exp(0.01), rel=1e-14)
        assert report.equity_return_standard_error == 0.0
        assert report.euler_standard_error == 0.0
        assert report.euler_relative_residual == pytest.approx(0.0, abs=1e-14)

    def test_risk_neutral_return_is_inverse_discount(self, printed_dist):
        report = simulate(reported_point_config(printed_dist, beta=0.9, zeta=1.0, xi=1.0, rho=0.0, num_periods=200_000))
        assert abs(report.sample_mean_equity_return - 1.0 / 0.9) <= 3.0 * report.equity_return_standard_error

    def test_single_period(self, printed_dist):
        report = simulate(reported_point_config(printed_dist, num_periods=1))
        assert report.equity_return_standard_error == 0.0
        assert report.num_periods == 1

    def test_divergent_economy(self):
        dist = GrowthDistribution(mu_x=0.01, sigma2_x=0.001)
        with pytest.raises(NoEquilibriumError):
            simulate(SimulationConfig(num_periods=10, seed=1, beta=1.0, zeta=1.0, xi=1.0, rho=0.0, dist=dist))

    def test_report_names_generator_and_seed(self, printed_dist):
        data = simulate(reported_point_config(printed_dist, num_periods=1000)).to_dict()
        assert data["generator"] == GENERATOR_NAME
        assert data["seed"] == SEED
        assert set(data["closed_form_targets"]) == {
            "price_dividend_ratio",
            "expected_equity_return",
            "risk_free_rate",
            "euler_relative_residual",
            "risk_free_relative_residual",
        }


class TestSimulationConfig:
    @pytest.mark.parametrize(
        "overrides",
        [{"num_periods": 0}, {"seed": -1}, {"seed": 2 ** 64}, {"workers": 0}, {"chunk_size": 0}, {"zeta": 0.0}, {"beta": 1.2}],
    )
    def test_invalid(self, printed_dist, overrides):
        with pytest.raises(DomainError):
            reported_point_config(printed_dist, **overrides)


class TestZScore:
    def test_values(self):
        assert z_score(3.0, 1.0, 0.5) == 4.0
        assert z_score(1.0, 1.0, 0.0) == 0.0
        assert z_score(2.0, 1.0, 0.0) == math.inf
        assert z_score(0.0, 1.0, 0.0) == -math.inf
