"""Calibration MCP tools."""

from typing import List, Optional

from fastmcp import FastMCP

from ..commands import cmd_calibrate, cmd_manifold, cmd_verify_point
from ..core.validation import validate_params
from .common import respond, stats_from_text


def register_calibration_tools(mcp: FastMCP) -> None:
    """Register calibration tools with the MCP server."""

    @mcp.tool(name="ccapm_calibrate")
    @validate_params
    async def ccapm_calibrate(
        stats_text: Optional[str] = None,
        beta: Optional[float] = None,
        paper_constants: bool = False,
        zeta0: float = 1.0,
        xi0: float = 1.0,
        rho0: float = 2.0,
        samples: Optional[int] = None,
    ) -> str:
        """Solve the three-equation calibration system.

        Args:
            stats_text: Statistics as ``key = value`` lines or a JSON object;
                the bundled Table 1 economy when omitted
            beta: Discount factor overriding the statistics
            paper_constants: Use the printed six-decimal coefficients
            zeta0: Initial guess for zeta
            xi0: Initial guess for xi
            rho0: Initial guess for rho
            samples: Number of manifold points to tabulate
        """
        return respond(lambda: cmd_calibrate(
            stats=stats_from_text(stats_text),
            beta=beta,
            paper_constants=paper_constants,
            initial_guess=(zeta0, xi0, rho0),
            samples=samples,
        ))

    @mcp.tool(name="ccapm_verify_point")
    @validate_params
    async def ccapm_verify_point(
        zeta: float,
        xi: float,
        rho: float,
        stats_text: Optional[str] = None,
        beta: Optional[float] = None,
        paper_constants: bool = False,
    ) -> str:
        """Residuals of the calibration system at a candidate (zeta, xi, rho)."""
        return respond(lambda: cmd_verify_point(
            zeta, xi, rho, stats=stats_from_text(stats_text), beta=beta, paper_constants=paper_constants
        ))

    @mcp.tool(name="ccapm_manifold")
    @validate_params
    async def ccapm_manifold(
        rhos: Optional[List[float]] = None,
        stats_text: Optional[str] = None,
        beta: Optional[float] = None,
        paper_constants: bool = False,
    ) -> str:
        """(zeta, xi) along the solution manifold for the given rho values."""
        def build():
            grid = [float(r) for r in rhos] if rhos else None
            return cmd_manifold(grid, stats=stats_from_text(stats_text), beta=beta, paper_constants=paper_constants)

        return respond(build)
