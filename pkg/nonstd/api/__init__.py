"""
API package.

FastAPI routers for the checks and the run store.
"""

from nonstd.api.app import create_app
from nonstd.api.checks import router as checks_router
from nonstd.api.checks import runs_router

__all__ = ['checks_router', 'create_app', 'runs_router']
