"""MCP resources and prompts for the sufficiency CCAPM toolkit."""

import json

from fastmcp import FastMCP

from ..core.formatting import truncate_text
from ..models.calibration import REFERENCE_SOLUTION, CalibrationSystem
from ..statsfile import bundled_text


def register_resources_and_prompts(mcp: FastMCP) -> None:
    """Register all MCP resources and prompts."""

    @mcp.resource(
        name="table1-statistics",
        description="Statistics for the U.S. economy (bundled fixture)",
        uri="ccapm://statistics/table1",
    )
    async def get_table1_statistics() -> str:
        """Bundled statistics for the U.S. economy in ``key = value`` form."""
        return bundled_text()

    @mcp.resource(
        name="printed-constants",
        description="Printed calibration coefficients and the reported solution",
        uri="ccapm://calibration/printed-constants",
    )
    async def get_printed_constants() -> str:
        """The six-decimal calibration coefficients and the reported solution."""
        zeta, xi, rho = REFERENCE_SOLUTION
        return json.dumps(
            {
                "system": CalibrationSystem.printed_constants().as_dict(),
                "reported_solution": {"zeta": zeta, "xi": xi, "rho": rho},
            },
            indent=2,
        )

    @mcp.prompt(
        name="explain-calibration",
        description="Explain a calibration report, its manifold and the baseline rho",
    )
    async def explain_calibration(report_json: str) -> str:
        """Ask for a reading of a calibration report."""
        try:
            report = json.loads(report_json)
        except json.JSONDecodeError:
            return f"The calibration report could not be parsed: {truncate_text(report_json)}"

        outputs = report.get("outputs", {})
        diagnostics = report.get("diagnostics", {})
        return (
            "Explain this consumption-CAPM calibration to a finance audience.\n\n"
            f"Solver point: zeta={outputs.get('zeta')}, xi={outputs.get('xi')}, rho={outputs.get('rho')} "
            f"(SSE {outputs.get('sse')}).\n"
            f"Jacobian rank: {diagnostics.get('rank')} of 3; consistency defect {diagnostics.get('consistency_defect')}.\n"
            f"Risk aversion needed without sufficiency factors: {outputs.get('baseline_puzzle_rho')}.\n"
            f"Manifold samples: {json.dumps(diagnostics.get('manifold', []))}\n\n"
            "Cover: why rho is not pinned down by the three equations, what the manifold "
            "of (rho, zeta, xi) means economically, and how the reported point compares "
            "with the risk aversion the unmodified model requires."
        )
