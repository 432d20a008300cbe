"""Logging setup: everything goes to stderr, stdout carries reports and MCP traffic."""

import logging
import sys
from typing import Optional

from .config import Config, get_config

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(config: Optional[Config] = None) -> None:
    """Configure the package logger from LOG_LEVEL / DEBUG."""
    config = config or get_config()
    level = getattr(logging, config.effective_log_level, logging.INFO)

    root = logging.getLogger("sufficiency_ccapm")
    root.setLevel(level)
    if not any(getattr(h, "_ccapm_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._ccapm_handler = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    for handler in root.handlers:
        handler.setLevel(level)
