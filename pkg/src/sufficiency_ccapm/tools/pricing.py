"""Pricing and simulation MCP tools."""

from typing import Optional

from fastmcp import FastMCP

from ..commands import cmd_price, cmd_simulate
from ..core.validation import validate_params
from .common import respond


def register_pricing_tools(mcp: FastMCP) -> None:

    @mcp.tool(name="ccapm_price")
    @validate_params
    async def ccapm_price(
        rho: float,
        zeta: float = 1.0,
        xi: float = 1.0,
        beta: Optional[float] = None,
        mu: Optional[float] = None,
        sigma2: Optional[float] = None,
    ) -> str:
        """Price-dividend ratio, expected equity return and risk-free rate.

        Growth moments default to the bundled Table 1 economy.
        """
        return respond(lambda: cmd_price(rho=rho, zeta=zeta, xi=xi, beta=beta, mu=mu, sigma2=sigma2))

    @mcp.tool(name="ccapm_simulate")
    @validate_params
    async def ccapm_simulate(
        rho: float,
        zeta: float = 1.0,
        xi: float = 1.0,
        beta: Optional[float] = None,
        mu: Optional[float] = None,
        sigma2: Optional[float] = None,
        num_periods: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> str:
        """Seeded Monte Carlo check of the closed-form prices."""
        return respond(lambda: cmd_simulate(
            rho=rho,
            zeta=zeta,
            xi=xi,
            beta=beta,
            mu=mu,
            sigma2=sigma2,
            num_periods=num_periods,
            seed=seed,
        ))
