"""Tests for CRRA utility algebra."""

import math

import pytest

from sufficiency_ccapm.core.errors import DomainError
from sufficiency_ccapm.models.utility import UtilityCurve, utility_sign


class TestValue:
    def test_square_root_utility(self):
        assert UtilityCurve(0.5).value(100.0) == pytest.approx(20.0, rel=1e-14)

    def test_rho_two_at_one(self):
        assert UtilityCurve(2.0).value(1.0) == pytest.approx(-1.0, rel=1e-14)

    def test_logarithmic_case(self):
        assert UtilityCurve(1.0).value(1.0) == 0.0
        assert UtilityCurve(1.0).value(math.e) == pytest.approx(1.0)

    @pytest.mark.parametrize("w", [0.0, -1.0, math.nan])
    def test_non_positive_wealth_rejected(self, w):
        with pytest.raises(DomainError):
            UtilityCurve(0.5).value(w)

    def test_negative_rho_rejected(self):
        with pytest.raises(DomainError):
            UtilityCurve(-0.1)

    def test_large_rho_does_not_overflow(self):
        assert UtilityCurve(60.0).value(1e-3) < 0.0
        assert math.isfinite(UtilityCurve(60.0).value(1e-3))


class TestDerivatives:
    def test_first_derivative(self):
        assert UtilityCurve(0.5).deriv1(100.0) == pytest.approx(0.1, rel=1e-14)

    def test_second_derivative(self):
        assert UtilityCurve(0.5).deriv2(100.0) == pytest.approx(-0.0005, rel=1e-14)

    def test_linear_utility_has_no_curvature(self):
        assert UtilityCurve(0.0).deriv2(37.0) == 0.0

    @pytest.mark.parametrize("rho", [0.3, 0.5, 2.0, 5.0])
    @pytest.mark.parametrize("w", [0.5, 3.0, 120.0])
    def test_match_finite_differences(self, rho, w):
        curve = UtilityCurve(rho)
        h = 1e-5 * w
        fd1 = (curve.value(w + h) - curve.value(w - h)) / (2 * h)
        fd2 = (curve.deriv1(w + h) - curve.deriv1(w - h)) / (2 * h)
        assert curve.deriv1(w) == pytest.approx(fd1, rel=1e-6)
        assert curve.deriv2(w) == pytest.approx(fd2, rel=1e-6)

    def test_relative_risk_aversion_identity(self, rng):
        for rho, w in zip(rng.uniform(0.0, 10.0, 200), rng.uniform(0.1, 1000.0, 200)):
            curve = UtilityCurve(float(rho))
            implied = -curve.deriv2(float(w)) * w / curve.deriv1(float(w))
            assert implied == pytest.approx(rho, rel=1e-12, abs=1e-15)


class TestInverse:
    def test_examples(self):
        assert UtilityCurve(0.5).inverse(20.0) == pytest.approx(100.0, rel=1e-13)
        assert UtilityCurve(2.0).inverse(-1.0) == pytest.approx(1.0, rel=1e-13)
        assert UtilityCurve(1.0).inverse(0.0) == 1.0

    @pytest.mark.parametrize("rho, v", [(0.5, -1.0), (0.5, 0.0), (2.0, 1.0)])
    def test_outside_range(self, rho, v):
        with pytest.raises(DomainError):
            UtilityCurve(rho).inverse(v)

    def test_round_trip(self, rng):
        for rho, w in zip(rng.uniform(0.0, 8.0, 500), rng.uniform(0.01, 500.0, 500)):
            if abs(rho - 1.0) < 1e-2:
                continue
            curve = UtilityCurve(float(rho))
            assert curve.inverse(curve.value(float(w))) == pytest.approx(w, rel=1e-12)


class TestRiskAversion:
    def test_absolute(self):
        assert UtilityCurve(2.0).absolute_risk_aversion(4.0) == 0.5
        assert UtilityCurve(0.0).absolute_risk_aversion(9.0) == 0.0

    def test_relative_is_constant(self):
        assert UtilityCurve(2.0).relative_risk_aversion(100.0) == 2.0

    def test_sign_of_utility(self):
        assert utility_sign(0.5) == 1
        assert utility_sign(2.0) == -1
        assert math.copysign(1.0, UtilityCurve(2.0).value(3.0)) == utility_sign(2.0)
        with pytest.raises(DomainError):
            utility_sign(1.0)
