"""
Database package.

Persistence of check reports: models, session management and CRUD operations.
"""

from nonstd.database.crud import get_run, get_runs, save_run
from nonstd.database.models import Base, CheckRun
from nonstd.database.session import get_db, get_engine, init_db

__all__ = [
    'Base',
    'CheckRun',
    'get_db',
    'get_engine',
    'get_run',
    'get_runs',
    'init_db',
    'save_run',
]
