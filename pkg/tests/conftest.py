"""
Shared fixtures and the hypothesis profile.
"""

import pytest
from hypothesis import HealthCheck, settings

from nonstd.config import get_settings

settings.register_profile(
    "nonstd",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("nonstd")


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from the default settings, whatever the environment says."""
    import os
    for key in list(os.environ):
        if key.startswith("NONSTD_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def memory_db():
    """An in-memory run store, shared by every session of the test."""
    from nonstd.database.session import get_engine
    url = "sqlite://"
    get_engine.cache_clear()
    yield url
    get_engine.cache_clear()
