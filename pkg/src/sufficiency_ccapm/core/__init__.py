"""Core utilities for the sufficiency CCAPM toolkit."""

from .config import get_config, reset_config, validate_config
from .errors import (
    EXIT_INPUT_ERROR,
    EXIT_NUMERICAL_ERROR,
    EXIT_OK,
    CcapmError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    InputError,
    NoEquilibriumError,
    NoSolutionError,
    NumericalError,
    ParameterError,
    SingularExpansionError,
    StatsFileError,
    float_errors_as_numerical,
)
from .formatting import format_number, render_key_values, render_table
from .types import ManifoldRow, PricingInfo, SimulationInfo, SystemInfo
from .log import configure_logging
from .validation import validate_parameter, validate_params

__all__ = [
    'get_config',
    'reset_config',
    'validate_config',
    'configure_logging',
    'EXIT_OK',
    'EXIT_INPUT_ERROR',
    'EXIT_NUMERICAL_ERROR',
    'CcapmError',
    'InputError',
    'DomainError',
    'ParameterError',
    'StatsFileError',
    'NumericalError',
    'NoSolutionError',
    'NoEquilibriumError',
    'DegenerateInputError',
    'SingularExpansionError',
    'ConvergenceError',
    'float_errors_as_numerical',
    'format_number',
    'render_key_values',
    'render_table',
    'SystemInfo',
    'ManifoldRow',
    'PricingInfo',
    'SimulationInfo',
    'validate_parameter',
    'validate_params',
]
