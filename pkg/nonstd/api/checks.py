"""
API endpoints for running checks and listing stored runs.
"""

import logging
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, Body, HTTPException, Query
from pydantic import ValidationError

from nonstd.errors import NonstdError
from nonstd.models.report import COMMANDS, CheckReport, RunConfig

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/api/checks",
    tags=["checks"],
    responses={422: {"description": "Invalid request"}},
)

runs_router = APIRouter(
    prefix="/api/runs",
    tags=["runs"],
    responses={404: {"description": "Run not found"}},
)


@router.post(
    "/{command}", response_model=CheckReport, response_model_exclude_none=True,
    summary="Run a check",
    description="Runs one command with the RunConfig fields given in the body and returns its report",
)
def run_check(
        command: str,
        body: Optional[Dict[str, Any]] = Body(None, examples=[{"expression": "x^3", "at": "2"}]),
        store: bool = Query(False, description="Persist the report to the run store"),
):
    """
    Run a check.

    The body holds the same fields as the command line flags, e.g.
    ``{"expression": "x^3", "at": "2", "criterion": "nsa"}``. Rationals are
    ``p/q`` strings.

    Returns 404 for unknown commands, 422 for invalid fields and 400 when the
    expression is undefined where the check needs it.
    """
    if command not in COMMANDS:
        raise HTTPException(status_code=404, detail=f"Unknown command '{command}'")
    body = body or {}
    if command == "xcheck" and body.get("corpus") is not None:
        raise HTTPException(status_code=422, detail="corpus files are not read over HTTP")
    try:
        config = RunConfig(command=command, **body)
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=[error['msg'] for error in e.errors()])
    except TypeError as e:
        raise HTTPException(status_code=422, detail=str(e))
    from nonstd.cli.commands import execute
    try:
        report = execute(config)
    except (NonstdError, ValueError) as e:
        logger.info(f"{command} rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    if store:
        from nonstd.database import save_run
        save_run(report)
    return report


@runs_router.get(
    "", response_model=List[Dict[str, Any]],
    summary="List stored runs",
    description="Returns the most recent stored runs, newest first",
)
def list_runs(
        limit: int = Query(20, ge=1, le=1000),
        command: Optional[str] = Query(None),
):
    from nonstd.database import get_runs
    return get_runs(limit=limit, command=command)


@runs_router.get(
    "/{run_id}", response_model=Dict[str, Any],
    summary="Get a stored run",
)
def get_stored_run(run_id: int):
    from nonstd.database import get_run
    run = get_run(run_id)
    if not run:
        raise HTTPException(status_code=404, detail=f"Run {run_id} not found")
    return run
