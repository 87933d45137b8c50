"""
FastAPI application exposing the checks over HTTP.
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from nonstd import __version__
from nonstd.api.checks import router, runs_router

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Create the run store tables when the application starts."""
    from nonstd.database import init_db
    logger.info("Application starting up, preparing the run store...")
    init_db()
    yield
    logger.info("Application shutting down")


def create_app() -> FastAPI:
    app = FastAPI(
        title="nonstd",
        description="Non-standard and classical analysis checks with exact rationals",
        version=__version__,
        docs_url="/api/docs",
        redoc_url="/api/redoc",
        openapi_url="/api/openapi.json",
        openapi_tags=[
            {
                "name": "checks",
                "description": "Limits, continuity, derivatives, integrals and series",
            },
            {
                "name": "runs",
                "description": "Reports stored with ?store=true",
            },
        ],
        lifespan=lifespan,
    )
    app.include_router(router)
    app.include_router(runs_router)
    return app
