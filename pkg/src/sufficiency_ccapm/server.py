#!/usr/bin/env python3
"""
Sufficiency CCAPM MCP Server

A Model Context Protocol server exposing calibration, pricing, risk
premium, classification and Monte Carlo tools for the consumption CAPM
with sufficiency factors.
"""

import argparse
import json
import sys

from fastmcp import FastMCP

from .commands import cmd_calibrate
from .core.config import get_config, validate_config
from .core.errors import CcapmError
from .core.log import configure_logging
from .resources import register_resources_and_prompts
from .tools import (
    register_calibration_tools,
    register_pricing_tools,
    register_risk_tools,
)


def create_server() -> FastMCP:
    """Create and configure the MCP server."""
    config = get_config()
    mcp = FastMCP(config.mcp_server_name)
    return mcp


def register_all_tools(mcp: FastMCP) -> None:
    """Register all MCP tools, resources, and prompts."""
    print("Registering sufficiency CCAPM tools...", file=sys.stderr)

    register_calibration_tools(mcp)
    register_pricing_tools(mcp)
    register_risk_tools(mcp)

    register_resources_and_prompts(mcp)

    print("All sufficiency CCAPM tools registered successfully!", file=sys.stderr)


def self_check() -> bool:
    """Calibrate the bundled Table 1 economy and check the reported point."""
    print("Running calibration self-check...", file=sys.stderr)
    try:
        report = cmd_calibrate()
    except CcapmError as e:
        print(f"Self-check failed: {e}", file=sys.stderr)
        return False

    reference = report.diagnostics["reference_point"]
    print(
        f"  rank {report.diagnostics['rank']}, baseline rho {report.outputs['baseline_puzzle_rho']:.4f}, "
        f"reference residual {reference['max_residual']:.2e}",
        file=sys.stderr,
    )
    return bool(reference["verified"])


def main() -> None:
    """Main entry point for the MCP server."""
    parser = argparse.ArgumentParser(
        description="Sufficiency CCAPM MCP Server - consumption CAPM calibration and pricing tools"
    )
    parser.add_argument(
        "--test",
        action="store_true",
        help="Run an offline calibration self-check and exit"
    )
    parser.add_argument(
        "--config",
        action="store_true",
        help="Show current configuration and exit"
    )

    args = parser.parse_args()

    if not validate_config():
        print("\nPlease check your .env file configuration.", file=sys.stderr)
        print("Use the .env.example file as a reference.", file=sys.stderr)
        sys.exit(1)

    config = get_config()
    configure_logging(config)

    if args.config:
        print("Sufficiency CCAPM Server Configuration:", file=sys.stderr)
        print(json.dumps(vars(config), indent=2, sort_keys=True), file=sys.stderr)
        sys.exit(0)

    if args.test:
        if self_check():
            print("✓ Self-check passed!", file=sys.stderr)
            sys.exit(0)
        else:
            print("✗ Self-check failed!", file=sys.stderr)
            sys.exit(1)

    print(f"Starting {config.mcp_server_name} MCP server", file=sys.stderr)
    print("Use Ctrl+C to stop the server", file=sys.stderr)

    mcp = create_server()
    register_all_tools(mcp)

    try:
        mcp.run()
    except KeyboardInterrupt:
        print("\nShutting down server...", file=sys.stderr)
    except Exception as e:
        print(f"Server error: {e}", file=sys.stderr)
        sys.exit(1)
    finally:
        print("Server stopped", file=sys.stderr)


if __name__ == "__main__":
    main()
