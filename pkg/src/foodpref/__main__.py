"""Entry point for ``python -m foodpref``."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
