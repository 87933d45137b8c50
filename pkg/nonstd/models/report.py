"""
Pydantic models for check requests and reports.
"""

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from nonstd.core.rational import parse_rat
from nonstd.core.verdict import Verdict

COMMANDS = ("limit", "continuity", "derivative", "integrate", "ftc", "series", "gap", "xcheck")
ReportStatus = Literal["PROVED", "REFUTED", "UNDECIDED", "COMPUTED"]

EXIT_CODES = {"PROVED": 0, "COMPUTED": 0, "REFUTED": 1, "UNDECIDED": 2}
EXIT_ERROR = 3

# Fields holding a single p/q literal
_RATIONAL_FIELDS = ("at", "L", "value", "from_", "to", "x", "eps", "ratio", "trunc_order")
# Fields holding a comma separated list of p/q literals
_RATIONAL_LIST_FIELDS = ("schedule", "bounds", "head")


def _check_rational_list(text: str) -> str:
    items = [item for item in text.split(',') if item.strip()]
    if not items:
        raise ValueError("expected a comma separated list of rationals")
    for item in items:
        parse_rat(item)
    return text


class RunConfig(BaseModel):
    """
    One check request, shared by the command line and the HTTP API.

    Rational fields carry their ``p/q`` text; decimals are rejected.
    """
    model_config = ConfigDict(extra='forbid', populate_by_name=True, frozen=True)

    command: Literal[COMMANDS] = Field(..., description="Check to run")
    expression: Optional[str] = Field(None, description="f, F or the series term, in the expression grammar")
    at: Optional[str] = Field(None, description="Standard point a")
    L: Optional[str] = Field(None, description="Candidate limit or sum")
    criterion: Optional[Literal["nsa", "two-point", "eq1", "classical"]] = Field(
        None,
        description="Which definition to check against",
    )
    fprime: Optional[str] = Field(None, description="Expression for f' (eq1 and value checks)")
    value: Optional[str] = Field(None, description="Claimed value of f'(a)")
    from_: Optional[str] = Field(None, alias="from", description="Left end of the interval")
    to: Optional[str] = Field(None, description="Right end of the interval")
    sum_to: Optional[int] = Field(None, description="Index up to which partial sums are reported", ge=0)
    diverges: bool = Field(False, description="Check divergence to infinity")
    bounded: bool = Field(False, description="Check the non-negative boundedness criterion")
    bounds: Optional[str] = Field(None, description="Ascending B values for the divergence check")
    offset: int = Field(0, description="First index of the series", ge=0)
    ratio: Optional[str] = Field(None, description="Geometric factor of the terms")
    head: Optional[str] = Field(None, description="Explicit leading terms")
    closed_form: bool = Field(False, description="The expression is the partial sum S_n itself")
    n: Optional[int] = Field(None, description="Power n of the gap demonstration", ge=1)
    x: Optional[str] = Field(None, description="Point x of the gap demonstration")
    eps: Optional[str] = Field(None, description="Step of the gap demonstration")
    schedule: Optional[str] = Field(None, description="Descending eps values")
    trunc_order: Optional[str] = Field(None, description="Levi-Civita truncation order")
    prec: Optional[int] = Field(None, description="Bits for transcendental enclosures", ge=8)
    probes: Optional[str] = Field(None, description="Comma separated infinitesimal probes")
    pairs: Optional[str] = Field(None, description="Semicolon separated probe pairs for two-point criteria")
    extend_zero: bool = Field(False, description="Take f(a) = 0 where f is undefined at a")
    corpus: Optional[str] = Field(None, description="Cross-check corpus file")
    seed: int = Field(0, description="Seed of the random cross-check entries")
    jobs: Optional[int] = Field(None, description="Worker threads of the cross-check runner", ge=1)

    @field_validator(*_RATIONAL_FIELDS)
    @classmethod
    def validate_rational(cls, v):
        if v is not None:
            parse_rat(v)
        return v

    @field_validator(*_RATIONAL_LIST_FIELDS)
    @classmethod
    def validate_rational_list(cls, v):
        if v is not None:
            _check_rational_list(v)
        return v

    @field_validator('expression', 'fprime')
    @classmethod
    def validate_expression(cls, v):
        if v is not None and not v.strip():
            raise ValueError('expression must not be empty')
        return v

    @model_validator(mode='after')
    def validate_required(self):
        needs_expression = self.command not in ("gap", "xcheck")
        if needs_expression and self.expression is None:
            raise ValueError(f"'{self.command}' needs an expression")
        if self.command in ("limit", "continuity", "derivative") and self.at is None:
            raise ValueError(f"'{self.command}' needs --at")
        if self.command in ("integrate", "ftc") and (self.from_ is None or self.to is None):
            raise ValueError(f"'{self.command}' needs --from and --to")
        if self.command == "gap" and (self.n is None or self.x is None or self.eps is None):
            raise ValueError("'gap' needs --n, --x and --eps")
        if self.command == "derivative" and self.criterion == "eq1" and self.fprime is None:
            raise ValueError("--criterion eq1 needs --fprime")
        if self.command == "derivative" and self.criterion == "classical" and self.fprime is None and self.value is None:
            raise ValueError("--criterion classical needs --fprime or --value")
        return self

    def inputs(self) -> Dict[str, Any]:
        """The fields that were set, keyed by flag name."""
        data = self.model_dump(by_alias=True, exclude_defaults=True)
        data.pop("command", None)
        return data


class CheckReport(BaseModel):
    """
    Machine readable outcome of one command.

    Attributes:
        command: The command that ran
        input: The request fields that were set
        status: PROVED, REFUTED, UNDECIDED or COMPUTED
        value: Exact value, ``p/q``
        enclosure: Certified ``[lo, hi]``
        certificate: Checker specific certificate
        witness: Diagnostic record of a refutation
        note: Free text
    """
    command: str = Field(..., description="The command that ran")
    input: Dict[str, Any] = Field(default_factory=dict, description="The request fields that were set")
    status: ReportStatus = Field(..., description="Verdict or COMPUTED")
    value: Optional[str] = Field(None, description="Exact value as p/q")
    enclosure: Optional[List[str]] = Field(None, description="Certified [lo, hi] as p/q strings")
    certificate: Optional[Any] = Field(None, description="Checker specific certificate")
    witness: Optional[Dict[str, Any]] = Field(None, description="Refutation witness")
    note: str = Field("", description="Free text")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "command": "derivative",
                "input": {"expression": "x^3", "at": "2"},
                "status": "PROVED",
                "value": "12",
                "enclosure": ["12", "12"],
                "note": "all difference quotients are infinitely close",
            },
        },
    )

    @model_validator(mode='after')
    def validate_witness(self):
        if self.status == "REFUTED" and not self.witness:
            raise ValueError('a REFUTED report needs a witness')
        return self

    @classmethod
    def from_verdict(cls, command: str, inputs: Dict[str, Any], verdict: Verdict) -> 'CheckReport':
        return cls(command=command, input=inputs, **verdict.to_dict())

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        """Stable JSON: sorted keys, unset optional fields omitted."""
        return json.dumps(self.model_dump(exclude_none=True), sort_keys=True)
