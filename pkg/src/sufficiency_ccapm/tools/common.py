"""Helpers shared by the MCP tool modules."""

import json
import logging
from typing import Callable, Optional

from ..core.errors import CcapmError, float_errors_as_numerical
from ..report import Report
from ..statsfile import StatsFile, parse_json, parse_key_values

logger = logging.getLogger(__name__)


def stats_from_text(stats_text: Optional[str]) -> Optional[StatsFile]:
    """Parse statistics passed inline; JSON when the text is an object."""
    if stats_text is None or not stats_text.strip():
        return None
    if stats_text.lstrip().startswith("{"):
        return parse_json(stats_text, source="<tool argument>")
    return parse_key_values(stats_text, source="<tool argument>")


def respond(build: Callable[[], Report]) -> str:
    """Run a report builder and return its JSON, or the error payload."""
    try:
        with float_errors_as_numerical():
            return build().to_json()
    except CcapmError as e:
        logger.warning("tool call failed: %s", e)
        return json.dumps(e.to_payload())
