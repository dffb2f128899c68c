#!/usr/bin/env python3
"""
qspeedlab Command Runner Script

This script:
1. Puts the project root on the Python path
2. Loads .env overrides if present
3. Hands the remaining arguments to the qspeed command router

Usage:
    python scripts/qspeed.py [--env ENVIRONMENT] COMMAND [FLAGS...]

Example:
    python scripts/qspeed.py fig-kickoff --family werner --x-steps 11 --out kickoff.csv
"""

import os
import sys
from pathlib import Path

# Add the project root to Python path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))


def load_environment(argv):
    """Load .env and apply a leading --env ENVIRONMENT pair; return the remaining arguments."""
    env_file = PROJECT_ROOT / '.env'
    if env_file.exists():
        from dotenv import load_dotenv
        load_dotenv(env_file)

    if len(argv) >= 2 and argv[0] == '--env':
        os.environ['ENVIRONMENT'] = argv[1]
        return argv[2:]
    return argv


def main():
    """Main entry point."""
    argv = load_environment(sys.argv[1:])

    from qspeedlab.cli import main as run
    from qspeedlab.config.settings import update_settings_for_environment

    update_settings_for_environment()
    sys.exit(run(argv))


if __name__ == '__main__':
    main()
