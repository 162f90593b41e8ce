"""Entry point for the Hume workbench.

This script configures logging and hands the command line to the dispatcher, e.g.
``python run.py rcf invariant "x^2 - 2 < 0"`` or ``python run.py serve --port 8000``.
"""

import logging
import sys

from cli.dispatch import dispatch
from config.settings import settings

# Configure logging; reports go to stdout, log records to stderr
logging.basicConfig(level=settings.log_level, stream=sys.stderr)
logger = logging.getLogger(__name__)


def main() -> int:
    """Main entry point for the application."""
    code = dispatch(sys.argv[1:])
    logger.debug(f"Exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
