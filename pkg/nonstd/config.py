"""
Application configuration and setup.

Settings are read from the environment with the ``NONSTD_`` prefix, e.g.
``NONSTD_TRUNC_ORDER=16`` or ``NONSTD_EPS_SCHEDULE=1/10,1/1000``.
"""

import logging
import os
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from nonstd.core.rational import as_rat

ENV_PREFIX = 'NONSTD_'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format=LOG_FORMAT,
)
logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """
    Library-wide defaults.

    Every operation that consults one of these values also accepts it as an
    explicit keyword argument.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    trunc_order: Fraction = Field(
        Fraction(12),
        description="Exponent up to which Levi-Civita series are trusted",
    )
    max_exponent_denominator: int = Field(
        16,
        description="Largest denominator allowed in a rational exponent",
        ge=1,
    )
    prec: int = Field(
        64,
        description="Bits of precision for enclosures of transcendental values",
        ge=8,
    )
    eps_schedule: List[Fraction] = Field(
        [Fraction(1, 10 ** k) for k in range(1, 7)],
        description="Descending epsilons quantified over by the classical checkers",
    )
    horizon: int = Field(
        10_000,
        description="Largest index summed explicitly by the series engine",
        ge=2,
    )
    max_depth: int = Field(
        24,
        description="Annuli verified below a candidate delta",
        ge=5,
    )
    max_halvings: int = Field(
        40,
        description="Delta halvings before the limit search gives up",
        ge=5,
    )
    bisection_depth: int = Field(
        8,
        description="Adaptive bisection levels inside one annulus cell",
        ge=0,
    )
    darboux_max_cells_log2: int = Field(
        10,
        description="Uniform Darboux refinement stops at 2**n cells",
        ge=1,
    )
    quadrature_order: int = Field(
        6,
        description="Taylor order of the cell quadrature (exact for polynomials up to this degree)",
        ge=0,
    )
    quadrature_cells: int = Field(
        64,
        description="Uniform cells of the Taylor quadrature before adaptive splitting",
        ge=1,
    )
    jobs: int = Field(
        1,
        description="Worker threads used by the cross-check runner",
        ge=1,
    )
    log_level: str = Field(
        "INFO",
        description="Root log level",
    )
    database_url: str = Field(
        "sqlite:///data/runs.db",
        description="SQLAlchemy URL of the run store",
    )

    @field_validator('trunc_order', mode='before')
    @classmethod
    def validate_trunc_order(cls, v):
        v = as_rat(v)
        if v <= 0:
            raise ValueError('trunc_order must be positive')
        return v

    @field_validator('eps_schedule', mode='before')
    @classmethod
    def validate_eps_schedule(cls, v):
        if isinstance(v, str):
            v = [item for item in v.split(',') if item.strip()]
        values = [as_rat(item) for item in v]
        if not values:
            raise ValueError('eps_schedule must not be empty')
        if any(item <= 0 for item in values):
            raise ValueError('eps_schedule values must be positive')
        if any(later >= earlier for earlier, later in zip(values, values[1:])):
            raise ValueError('eps_schedule must be strictly descending')
        return values

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v):
        v = v.upper()
        if v not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
            raise ValueError('log_level must be DEBUG, INFO, WARNING or ERROR')
        return v

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> 'Settings':
        """Build settings from ``NONSTD_*`` variables, falling back to the defaults."""
        environ = os.environ if environ is None else environ
        values: Dict[str, str] = {}
        for name in cls.model_fields:
            key = f"{ENV_PREFIX}{name.upper()}"
            if key in environ:
                values[name] = environ[key]
        return cls(**values)


@lru_cache()
def get_settings() -> Settings:
    """Return the process-wide settings, read once from the environment."""
    settings = Settings.from_env()
    logging.getLogger().setLevel(settings.log_level)
    return settings


def configure_logging(level: str) -> None:
    """Switch the root log level, e.g. for ``--verbose``."""
    logging.getLogger().setLevel(level.upper())
    logger.debug(f"Log level set to {level.upper()}")
