"""
CRUD operations for the run store.
"""

import json
import logging
from typing import Dict, List, Optional

from sqlalchemy import select
from sqlalchemy.exc import SQLAlchemyError

from nonstd.database.models import CheckRun
from nonstd.database.session import get_db
from nonstd.models.report import CheckReport

logger = logging.getLogger(__name__)


def save_run(report: CheckReport, url: Optional[str] = None) -> Optional[int]:
    """
    Save a report to the database.

    Args:
        report (CheckReport): The report
        url (Optional[str]): Database URL, default from the settings

    Returns:
        Optional[int]: The id of the stored run, or None if it could not be saved
    """
    db = get_db(url)
    try:
        run = CheckRun(
            command=report.command,
            input=json.dumps(report.input, sort_keys=True),
            status=report.status,
            report=report.to_json(),
        )
        db.add(run)
        db.commit()
        return run.id
    except SQLAlchemyError as e:
        db.rollback()
        logger.error(f"Error saving run: {e}")
        return None
    finally:
        db.close()


def get_run(run_id: int, url: Optional[str] = None) -> Optional[Dict]:
    """
    Get a stored run.

    Returns:
        Optional[Dict]: The run, or None if not found
    """
    db = get_db(url)
    try:
        run = db.get(CheckRun, run_id)
        return run.to_dict() if run else None
    finally:
        db.close()


def get_runs(url: Optional[str] = None, limit: int = 20, command: Optional[str] = None) -> List[Dict]:
    """
    Get the most recent runs, newest first.

    Args:
        url (Optional[str]): Database URL, default from the settings
        limit (int): Largest number of runs returned
        command (Optional[str]): Only runs of this command

    Returns:
        List[Dict]: A list of dictionaries containing run information
    """
    db = get_db(url)
    try:
        query = select(CheckRun)
        if command is not None:
            query = query.where(CheckRun.command == command)
        query = query.order_by(CheckRun.id.desc()).limit(limit)
        return [run.to_dict() for run in db.scalars(query)]
    finally:
        db.close()
