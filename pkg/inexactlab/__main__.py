"""Run inexactlab, a simulator of inexact computation under energy constraints, from the command line."""
import sys

# First party imports
from inexactlab.config import setup_logging
from inexactlab.harness import Harness


def main() -> None:
    """Set up logging, then run the harness on the process arguments and exit with its status."""
    setup_logging()
    sys.exit(Harness().run())


if __name__ == "__main__":
    main()
