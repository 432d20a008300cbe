"""Configuration management for the sufficiency CCAPM toolkit."""

import os
import sys
from typing import Optional

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


class Config:
    """Configuration class for the toolkit and its MCP server."""

    def __init__(self) -> None:
        # Server / diagnostics
        self.mcp_server_name = os.getenv("MCP_SERVER_NAME", "sufficiency-ccapm")
        self.debug = _env_bool("DEBUG", "false")
        self.log_level = os.getenv("LOG_LEVEL", "INFO").upper()

        # Model defaults
        self.default_beta = float(os.getenv("CCAPM_BETA", "0.99"))
        self.classify_tolerance = float(os.getenv("CCAPM_CLASSIFY_TOL", "1e-9"))

        # Calibration solver
        self.solver_max_iter = int(os.getenv("CCAPM_SOLVER_MAX_ITER", "100"))
        self.solver_step_tol = float(os.getenv("CCAPM_SOLVER_STEP_TOL", "1e-15"))
        self.solver_damping = float(os.getenv("CCAPM_SOLVER_DAMPING", "1.0"))
        self.rank_tolerance = float(os.getenv("CCAPM_RANK_TOL", "1e-8"))

        # Manifold report
        self.manifold_samples = int(os.getenv("CCAPM_MANIFOLD_SAMPLES", "11"))
        self.manifold_rho_max = float(os.getenv("CCAPM_MANIFOLD_RHO_MAX", "50.0"))

        # Monte Carlo
        self.mc_seed = int(os.getenv("CCAPM_MC_SEED", "20240917"))
        self.mc_num_periods = int(os.getenv("CCAPM_MC_PERIODS", "1000000"))
        self.mc_workers = int(os.getenv("CCAPM_MC_WORKERS", "1"))
        self.mc_chunk_size = int(os.getenv("CCAPM_MC_CHUNK", "65536"))

    @property
    def effective_log_level(self) -> str:
        """DEBUG mode always wins over LOG_LEVEL."""
        return "DEBUG" if self.debug else self.log_level


# Global configuration instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> Config:
    """Re-read the environment and replace the global configuration."""
    global _config
    _config = Config()
    return _config


def validate_config() -> bool:
    """Validate that configured values are usable."""
    config = get_config()
    ok = True

    if not 0.0 < config.default_beta <= 1.0:
        print(f"Error: CCAPM_BETA must lie in (0, 1], got {config.default_beta}", file=sys.stderr)
        ok = False

    for name, value in (
        ("CCAPM_CLASSIFY_TOL", config.classify_tolerance),
        ("CCAPM_SOLVER_STEP_TOL", config.solver_step_tol),
        ("CCAPM_RANK_TOL", config.rank_tolerance),
    ):
        if value <= 0.0:
            print(f"Error: {name} must be positive, got {value}", file=sys.stderr)
            ok = False

    if not 0.0 < config.solver_damping <= 1.0:
        print(f"Error: CCAPM_SOLVER_DAMPING must lie in (0, 1], got {config.solver_damping}", file=sys.stderr)
        ok = False

    for name, count in (
        ("CCAPM_SOLVER_MAX_ITER", config.solver_max_iter),
        ("CCAPM_MANIFOLD_SAMPLES", config.manifold_samples),
        ("CCAPM_MC_PERIODS", config.mc_num_periods),
        ("CCAPM_MC_WORKERS", config.mc_workers),
        ("CCAPM_MC_CHUNK", config.mc_chunk_size),
    ):
        if count < 1:
            print(f"Error: {name} must be at least 1, got {count}", file=sys.stderr)
            ok = False

    if config.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        print(f"Warning: unknown LOG_LEVEL '{config.log_level}', falling back to INFO", file=sys.stderr)

    return ok
