"""
Main entry point for the application.
"""

import sys

from nonstd.cli import main

if __name__ == "__main__":
    sys.exit(main())
