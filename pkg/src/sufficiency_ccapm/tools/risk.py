"""Risk-behavior MCP tools: premia, classification and curve position."""

import json
from typing import Optional

from fastmcp import FastMCP

from ..commands import cmd_classify, cmd_premium
from ..core.errors import CcapmError
from ..core.validation import validate_params
from ..models.risk_behavior import curve_relation
from .common import respond


def register_risk_tools(mcp: FastMCP) -> None:
    """Register premium, classification and curve-relation tools."""

    @mcp.tool(name="ccapm_premium")
    @validate_params
    async def ccapm_premium(
        rho: float,
        w_s: float,
        w_ns: float,
        beta: Optional[float] = None,
        eta: float = 1.0,
        method: str = "exact",
        literal: bool = False,
        delta: Optional[float] = None,
    ) -> str:
        """Risk premium of giving up certain wealth w_s for an uncertain w_ns.

        Args:
            method: exact, first_order or eq27
            literal: eq27 only, weight by rho instead of rho / w_s
            delta: Credit beta * u(w_ns) - delta instead of beta * eta * u(w_ns)
        """
        return respond(lambda: cmd_premium(
            rho=rho, w_s=w_s, w_ns=w_ns, beta=beta, eta=eta, method=method, literal=literal, delta=delta
        ))

    @mcp.tool(name="ccapm_classify")
    @validate_params
    async def ccapm_classify(
        rho: float,
        w_t: float,
        w_T: float,
        beta: Optional[float] = None,
        eta: float = 1.0,
        tol: Optional[float] = None,
    ) -> str:
        """Classify an investor as risk averse, risk loving or risk neutral."""
        return respond(lambda: cmd_classify(rho=rho, w_t=w_t, w_T=w_T, beta=beta, eta=eta, tol=tol))

    @mcp.tool(name="ccapm_curve_relation")
    @validate_params
    async def ccapm_curve_relation(eta: float, rho: float) -> str:
        """Whether eta * u(w) lies below, above or on u(w)."""
        try:
            relation = curve_relation(eta, rho)
        except CcapmError as e:
            return json.dumps(e.to_payload())
        return json.dumps({"eta": eta, "rho": rho, "relation": relation.value})
