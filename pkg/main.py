"""
Main Entrypoint
===============
Loads .env, configures logging to stderr and hands over to the polignac CLI.

    python main.py census --limit 1000000 --format csv
"""

import logging
import sys

# Try to load .env file
try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass

from polignac_core.cli import cli
from polignac_core.config import get_settings

logging.basicConfig(
    level=getattr(logging, get_settings().log_level, logging.INFO),
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)

logger = logging.getLogger("main")


def main() -> None:
    cli(prog_name="polignac")


if __name__ == "__main__":
    main()
