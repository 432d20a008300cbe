"""Parameter validation for MCP tools and numeric guards for the models."""

import functools
import inspect
import json
import logging
import math
from typing import Any, Callable, TypeVar, Union, cast, get_type_hints

from .errors import DomainError, ParameterError

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


def validate_parameter(param_name: str, value: Any, expected_type: Any) -> Any:
    """
    Validate and convert a parameter to the expected type.

    Args:
        param_name: Name of the parameter (for error messages)
        value: The value to validate and convert
        expected_type: The expected Python type

    Returns:
        The validated and converted value

    Raises:
        ParameterError: If validation fails
    """
    origin = getattr(expected_type, "__origin__", None)
    args = getattr(expected_type, "__args__", None)

    # Optional[X] is Union[X, None]
    is_optional = False
    if origin is Union and args is not None and type(None) in args:
        is_optional = True
        non_none_types = [t for t in args if t is not type(None)]
        if len(non_none_types) == 1:
            expected_type = non_none_types[0]
            origin = getattr(expected_type, "__origin__", None)
        else:
            expected_type = Union[tuple(non_none_types)]

    if value is None:
        if is_optional:
            return None
        raise ParameterError(f"Parameter '{param_name}' cannot be None")

    if origin is Union and args is not None:
        for arg_type in args:
            if arg_type is type(None):
                continue
            try:
                return validate_parameter(param_name, value, arg_type)
            except ParameterError:
                continue
        type_names = ", ".join(str(t) for t in args)
        raise ParameterError(
            f"Parameter '{param_name}' with value '{value}' (type: {type(value).__name__}) "
            f"could not be converted to any of the expected types: {type_names}"
        )

    if expected_type is str:
        return str(value)
    elif expected_type is int:
        if isinstance(value, bool):
            raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to int")
        try:
            if isinstance(value, str) and not value.strip():
                raise ValueError
            return int(value)
        except (ValueError, TypeError):
            raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to int")
    elif expected_type is float:
        if isinstance(value, bool):
            raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to float")
        try:
            if isinstance(value, str) and not value.strip():
                raise ValueError
            return float(value)
        except (ValueError, TypeError):
            raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to float")
    elif expected_type is bool:
        if isinstance(value, bool):
            return value
        elif isinstance(value, str):
            value_lower = value.lower().strip()
            if value_lower in ("true", "yes", "1", "t", "y"):
                return True
            elif value_lower in ("false", "no", "0", "f", "n"):
                return False
        elif isinstance(value, (int, float)):
            return bool(value)
        raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to bool")
    elif expected_type is list or origin is list:
        if isinstance(value, (list, tuple)):
            return list(value)
        elif isinstance(value, str):
            try:
                parsed = json.loads(value)
                if isinstance(parsed, list):
                    return parsed
            except json.JSONDecodeError:
                pass
            return [item.strip() for item in value.split(",") if item.strip()]
        raise ParameterError(f"Parameter '{param_name}' with value '{value}' could not be converted to list")

    if isinstance(value, expected_type):
        return value

    raise ParameterError(
        f"Parameter '{param_name}' with value '{value}' (type: {type(value).__name__}) "
        f"is not compatible with expected type: {expected_type}"
    )


def validate_params(func: F) -> F:
    """Decorator to validate async tool parameters based on type hints."""
    sig = inspect.signature(func)
    type_hints = get_type_hints(func)

    @functools.wraps(func)
    async def wrapper(*args: Any, **kwargs: Any) -> Any:
        bound_args = sig.bind(*args, **kwargs)
        bound_args.apply_defaults()

        for param_name, param_value in bound_args.arguments.items():
            if param_name in type_hints and param_name != "return":
                try:
                    bound_args.arguments[param_name] = validate_parameter(
                        param_name, param_value, type_hints[param_name]
                    )
                except ParameterError as e:
                    logger.warning("Parameter validation error: %s", e)
                    return json.dumps(e.to_payload())

        return await func(**bound_args.arguments)

    return cast(F, wrapper)


# ===== NUMERIC GUARDS =====

def require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def require_positive(name: str, value: float) -> float:
    require_finite(name, value)
    if value <= 0.0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def require_non_negative(name: str, value: float) -> float:
    require_finite(name, value)
    if value < 0.0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    return value


def require_probability(name: str, value: float) -> float:
    require_finite(name, value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")
    return value


def require_discount_factor(name: str, value: float) -> float:
    require_finite(name, value)
    if not 0.0 < value <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {value}")
    return value
