"""Tests for tool argument coercion and numeric guards."""

import json
import math
from typing import List, Optional

import pytest

from sufficiency_ccapm.core.errors import DomainError, ParameterError
from sufficiency_ccapm.core.validation import (
    require_discount_factor,
    require_finite,
    require_non_negative,
    require_positive,
    require_probability,
    validate_parameter,
    validate_params,
)


class TestValidateParameter:
    def test_float_from_string(self):
        assert validate_parameter("rho", "2.5", float) == 2.5

    def test_int_from_string(self):
        assert validate_parameter("seed", " 7 ", int) == 7

    @pytest.mark.parametrize("value", ["", "abc", True])
    def test_float_rejects(self, value):
        with pytest.raises(ParameterError, match="rho"):
            validate_parameter("rho", value, float)

    def test_int_rejects_bool(self):
        with pytest.raises(ParameterError):
            validate_parameter("samples", False, int)

    @pytest.mark.parametrize("value, expected", [("true", True), ("No", False), ("1", True), (0, False)])
    def test_bool(self, value, expected):
        assert validate_parameter("literal", value, bool) is expected

    def test_bool_rejects_other_strings(self):
        with pytest.raises(ParameterError):
            validate_parameter("literal", "maybe", bool)

    def test_optional(self):
        assert validate_parameter("beta", None, Optional[float]) is None
        assert validate_parameter("beta", "0.98", Optional[float]) == 0.98

    def test_required_none(self):
        with pytest.raises(ParameterError, match="cannot be None"):
            validate_parameter("rho", None, float)

    def test_list_forms(self):
        assert validate_parameter("rhos", "[0, 1.5]", List[float]) == [0, 1.5]
        assert validate_parameter("rhos", "0, 2,", List[float]) == ["0", "2"]
        assert validate_parameter("rhos", (1.0, 2.0), Optional[List[float]]) == [1.0, 2.0]


@validate_params
async def _scaled(x: float, factor: Optional[int] = None) -> str:
    return json.dumps({"value": x * (factor or 1)})


class TestValidateParams:
    async def test_coerces(self):
        assert json.loads(await _scaled("1.5", factor="2")) == {"value": 3.0}

    async def test_error_payload(self):
        payload = json.loads(await _scaled("x"))
        assert payload["kind"] == "parameter_error"


class TestGuards:
    def test_pass_through(self):
        assert require_finite("a", 1.5) == 1.5
        assert require_positive("a", 2.0) == 2.0
        assert require_non_negative("a", 0.0) == 0.0
        assert require_probability("t", 1.0) == 1.0
        assert require_discount_factor("beta", 1.0) == 1.0

    @pytest.mark.parametrize(
        "guard, value",
        [
            (require_finite, math.nan),
            (require_finite, math.inf),
            (require_positive, 0.0),
            (require_non_negative, -1e-12),
            (require_probability, 1.01),
            (require_discount_factor, 0.0),
            (require_discount_factor, 1.0001),
        ],
    )
    def test_rejects(self, guard, value):
        with pytest.raises(DomainError):
            guard("x", value)

    def test_domain_error_is_value_error(self):
        with pytest.raises(ValueError):
            require_positive("w", -1.0)
