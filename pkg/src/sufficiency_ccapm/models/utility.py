"""CRRA utility algebra.

u(w) = w^(1-rho) / (1-rho) for rho != 1 and ln(w) for rho = 1. Powers are
evaluated as exp((1-rho) ln w) so large rho does not overflow.
"""

import math
from dataclasses import dataclass

from ..core.errors import DomainError
from ..core.validation import require_non_negative, require_positive


@dataclass(frozen=True)
class UtilityCurve:
    """Constant relative risk aversion curve with coefficient ``rho``."""

    rho: float

    def __post_init__(self) -> None:
        require_non_negative("rho", self.rho)

    @property
    def is_logarithmic(self) -> bool:
        return self.rho == 1.0

    def _check_wealth(self, w: float) -> float:
        return require_positive("wealth", w)

    def value(self, w: float) -> float:
        """Utility of wealth ``w``; may be negative when rho > 1."""
        self._check_wealth(w)
        if self.is_logarithmic:
            return math.log(w)
        one_minus = 1.0 - self.rho
        return math.exp(one_minus * math.log(w)) / one_minus

    def deriv1(self, w: float) -> float:
        """Marginal utility w^(-rho)."""
        self._check_wealth(w)
        return math.exp(-self.rho * math.log(w))

    def deriv2(self, w: float) -> float:
        """Curvature -rho * w^(-rho-1); zero for linear utility."""
        self._check_wealth(w)
        if self.rho == 0.0:
            return 0.0
        return -self.rho * math.exp((-self.rho - 1.0) * math.log(w))

    def inverse(self, v: float) -> float:
        """Wealth whose utility is ``v``.

        Raises:
            DomainError: if ``v`` is outside the range of the curve, i.e.
                v * (1 - rho) <= 0 for rho != 1
        """
        if not math.isfinite(v):
            raise DomainError(f"utility value must be finite, got {v}")
        if self.is_logarithmic:
            return math.exp(v)
        one_minus = 1.0 - self.rho
        scaled = v * one_minus
        if scaled <= 0.0:
            raise DomainError(
                f"utility {v} is outside the range of the CRRA curve with rho={self.rho}"
            )
        return math.exp(math.log(scaled) / one_minus)

    def absolute_risk_aversion(self, w: float) -> float:
        """alpha = -u''(w) / u'(w) = rho / w."""
        self._check_wealth(w)
        return self.rho / w

    def relative_risk_aversion(self, w: float) -> float:
        """-u''(w) w / u'(w), which is rho at every wealth level."""
        self._check_wealth(w)
        return self.rho


def utility_sign(rho: float) -> int:
    """Sign of u(w) for w > 0 and rho != 1."""
    if rho == 1.0:
        raise DomainError("the sign of logarithmic utility depends on wealth")
    return 1 if rho < 1.0 else -1
