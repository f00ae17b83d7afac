#!/usr/bin/env python3
"""
banditboost - main entry point
Loads config/.env, then hands over to the command line (run, sweep, curve, verify).
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

SCRIPT_DIR = Path(__file__).parent
ENV_PATH = SCRIPT_DIR / 'config' / '.env'

# Environment first: BANDITBOOST_THREADS / BANDITBOOST_LOG_LEVEL are read by the CLI
load_dotenv(str(ENV_PATH))

sys.path.insert(0, str(SCRIPT_DIR))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
