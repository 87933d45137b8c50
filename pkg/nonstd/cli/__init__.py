"""
Command line package.

Argument parsing and the command dispatch shared with the HTTP API.
"""

from nonstd.cli.commands import execute
from nonstd.cli.main import main
from nonstd.cli.parser import build_parser

__all__ = ['build_parser', 'execute', 'main']
