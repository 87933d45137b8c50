"""
Database session management.

Engines are created lazily, one per URL, and the tables are created on first use.
"""

import logging
import os
from functools import lru_cache
from typing import Optional

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine, make_url
from sqlalchemy.orm import Session, sessionmaker
from sqlalchemy.pool import StaticPool

from nonstd.database.models import Base

logger = logging.getLogger(__name__)


def _resolve(url: Optional[str]) -> str:
    if url is not None:
        return url
    from nonstd.config import get_settings
    return get_settings().database_url


@lru_cache()
def get_engine(url: str) -> Engine:
    """Create the engine for url, making the SQLite directory if needed."""
    parsed = make_url(url)
    kwargs = {}
    if parsed.get_backend_name() == "sqlite":
        kwargs["connect_args"] = {"check_same_thread": False}
        if parsed.database in (None, "", ":memory:"):
            # one shared connection, or every session would see an empty database
            kwargs["poolclass"] = StaticPool
        else:
            directory = os.path.dirname(parsed.database)
            if directory and not os.path.exists(directory):
                os.makedirs(directory)
    engine = create_engine(url, **kwargs)
    Base.metadata.create_all(bind=engine)
    logger.debug(f"Run store ready at {parsed.render_as_string(hide_password=True)}")
    return engine


def get_db(url: Optional[str] = None) -> Session:
    """Get a database session."""
    factory = sessionmaker(autocommit=False, autoflush=False, bind=get_engine(_resolve(url)))
    return factory()


def init_db(url: Optional[str] = None) -> None:
    """Initialize the database by creating all tables."""
    Base.metadata.create_all(bind=get_engine(_resolve(url)))
