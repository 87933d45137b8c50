"""
SQLAlchemy models for the run store.
"""

import datetime

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import declarative_base

# Create base class for models
Base = declarative_base()


class CheckRun(Base):
    """SQLAlchemy model for the check_runs table."""
    __tablename__ = "check_runs"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String, index=True, nullable=False)
    input = Column(Text, nullable=False)
    status = Column(String, index=True, nullable=False)
    report = Column(Text, nullable=False)
    created_at = Column(DateTime, default=lambda: datetime.datetime.now(datetime.timezone.utc))

    def to_dict(self):
        """Convert model instance to dictionary."""
        return {
            "id": self.id,
            "command": self.command,
            "input": self.input,
            "status": self.status,
            "report": self.report,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }
