"""
Models package.

Pydantic models for check requests and JSON reports.
"""

from nonstd.models.report import COMMANDS, EXIT_CODES, EXIT_ERROR, CheckReport, RunConfig

__all__ = ['COMMANDS', 'EXIT_CODES', 'EXIT_ERROR', 'CheckReport', 'RunConfig']
