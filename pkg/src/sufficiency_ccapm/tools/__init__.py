"""Tool modules for the sufficiency CCAPM MCP server."""

from .calibration import register_calibration_tools
from .pricing import register_pricing_tools
from .risk import register_risk_tools

__all__ = [
    'register_calibration_tools',
    'register_pricing_tools',
    'register_risk_tools',
]
