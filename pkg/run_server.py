#!/usr/bin/env python3
"""
Direct Python startup script for the sufficiency CCAPM MCP server.
Runs from a checkout without installing the package.
"""

import os
import sys
from pathlib import Path


def main():
    script_dir = Path(__file__).parent.absolute()

    # .env is optional; every setting has a default
    env_file = script_dir / '.env'
    if env_file.exists():
        print(f"Loading environment from: {env_file}", file=sys.stderr)
        from dotenv import load_dotenv
        load_dotenv(env_file)

    os.chdir(script_dir)
    sys.path.insert(0, str(script_dir / 'src'))

    try:
        from sufficiency_ccapm.server import main as server_main
        server_main()
    except ImportError as e:
        print(f"Error importing sufficiency CCAPM server: {e}", file=sys.stderr)
        print("Make sure the dependencies in requirements.txt are installed", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
