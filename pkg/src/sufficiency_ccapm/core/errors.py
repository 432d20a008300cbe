"""Exception hierarchy shared by the numerical modules, the CLI and the MCP tools.

Every exception carries the process exit code the CLI uses for it:
1 for bad input, 2 for numerical failure.
"""

from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, Sequence

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NUMERICAL_ERROR = 2


class CcapmError(Exception):
    """Base class for all toolkit errors."""

    exit_code = EXIT_INPUT_ERROR
    kind = "error"

    def to_payload(self) -> Dict[str, Any]:
        """Structured form used by MCP tools and --json output."""
        return {"error": str(self), "kind": self.kind}


# ===== INPUT ERRORS (exit code 1) =====

class InputError(CcapmError):
    exit_code = EXIT_INPUT_ERROR
    kind = "input_error"


class DomainError(InputError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    kind = "domain_error"


class ParameterError(InputError):
    """A CLI flag or tool argument could not be converted."""

    kind = "parameter_error"


class StatsFileError(InputError):
    """A statistics file is unreadable, malformed or incomplete."""

    kind = "stats_file_error"

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload.update({"field": self.field, "line": self.line})
        return payload


# ===== NUMERICAL ERRORS (exit code 2) =====

class NumericalError(CcapmError):
    exit_code = EXIT_NUMERICAL_ERROR
    kind = "numerical_error"


class NoSolutionError(NumericalError):
    """A target utility has no pre-image on the utility curve."""

    kind = "no_solution"


class NoEquilibriumError(NumericalError):
    """beta * factor * E(x^(1-rho)) >= 1: the equity price diverges."""

    kind = "no_equilibrium"

    def __init__(self, message: str, discounted_moment: float):
        self.discounted_moment = discounted_moment
        super().__init__(message)

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload["discounted_moment"] = self.discounted_moment
        return payload


class DegenerateInputError(NumericalError):
    """A closed form divides by a quantity that vanishes for these inputs."""

    kind = "degenerate_input"


class SingularExpansionError(DegenerateInputError):
    """Second-order expansions are undefined for a zero expected gain."""

    kind = "singular_expansion"


class ConvergenceError(NumericalError):
    """The calibration solver ran out of iterations."""

    kind = "convergence_error"

    def __init__(self, message: str, last_iterate: Sequence[float], sse: float, iterations: int):
        self.last_iterate = [float(v) for v in last_iterate]
        self.sse = sse
        self.iterations = iterations
        super().__init__(message)

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload.update({
            "last_iterate": self.last_iterate,
            "sse": self.sse,
            "iterations": self.iterations,
        })
        return payload


@contextmanager
def float_errors_as_numerical() -> Iterator[None]:
    """Re-raise floating-point overflow from math and numpy as NumericalError."""
    try:
        yield
    except (OverflowError, FloatingPointError) as e:
        raise NumericalError(f"floating-point overflow: {e}") from e
