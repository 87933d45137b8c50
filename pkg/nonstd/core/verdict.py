"""
Three-valued verdicts.

Every checker answers PROVED, REFUTED or UNDECIDED together with the data
that backs the answer. A REFUTED verdict always carries a witness.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional

from nonstd.core.rat_interval import RatInterval
from nonstd.core.rational import format_rat


class Status(str, Enum):
    PROVED = "PROVED"
    REFUTED = "REFUTED"
    UNDECIDED = "UNDECIDED"


# REFUTED dominates, then UNDECIDED, then PROVED
_PRECEDENCE = {Status.PROVED: 0, Status.UNDECIDED: 1, Status.REFUTED: 2}


@dataclass(frozen=True)
class Verdict:
    """
    Result of a semi-decision procedure.

    Attributes:
        status (Status): PROVED, REFUTED or UNDECIDED
        value (Optional[Fraction]): Exact value established by the check
        enclosure (Optional[RatInterval]): Certified enclosure of the value
        witness (Optional[Dict[str, Any]]): Diagnostic record, required for REFUTED
        note (str): Free text
        certificate (Any): Checker specific certificate
    """
    status: Status
    value: Optional[Fraction] = None
    enclosure: Optional[RatInterval] = None
    witness: Optional[Dict[str, Any]] = None
    note: str = ""
    certificate: Any = field(default=None, compare=False)

    def __post_init__(self):
        if self.status is Status.REFUTED and not self.witness:
            raise ValueError("a REFUTED verdict needs a witness")

    @classmethod
    def proved(cls, value: Optional[Fraction] = None, note: str = "", **kwargs) -> 'Verdict':
        return cls(Status.PROVED, value=value, note=note, **kwargs)

    @classmethod
    def refuted(cls, witness: Dict[str, Any], note: str = "", **kwargs) -> 'Verdict':
        return cls(Status.REFUTED, witness=witness, note=note, **kwargs)

    @classmethod
    def undecided(cls, note: str = "", **kwargs) -> 'Verdict':
        return cls(Status.UNDECIDED, note=note, **kwargs)

    @property
    def decided(self) -> bool:
        return self.status is not Status.UNDECIDED

    def with_note(self, note: str) -> 'Verdict':
        return replace(self, note=note)

    @staticmethod
    def combine(verdicts: Iterable['Verdict']) -> 'Verdict':
        """
        Aggregate verdicts: the first REFUTED wins, else the first UNDECIDED,
        else the first PROVED. An empty input is vacuously PROVED.
        """
        best: Optional[Verdict] = None
        for verdict in verdicts:
            if best is None or _PRECEDENCE[verdict.status] > _PRECEDENCE[best.status]:
                best = verdict
        return best if best is not None else Verdict.proved(note="vacuous")

    def to_dict(self) -> Dict[str, Any]:
        """Plain, JSON friendly form; rationals become ``p/q`` strings."""
        data: Dict[str, Any] = {"status": self.status.value, "note": self.note}
        if self.value is not None:
            data["value"] = format_rat(self.value)
        if self.enclosure is not None:
            data["enclosure"] = list(self.enclosure.as_pair())
        if self.witness:
            data["witness"] = {key: stringify(value) for key, value in sorted(self.witness.items())}
        if self.certificate is not None:
            data["certificate"] = stringify(self.certificate)
        return data


def stringify(value: Any) -> Any:
    """Recursively turn rationals and other values into JSON-stable data."""
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, RatInterval):
        return list(value.as_pair())
    if isinstance(value, dict):
        return {str(key): stringify(item) for key, item in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [stringify(item) for item in value]
    if hasattr(value, 'to_dict'):
        return stringify(value.to_dict())
    return str(value)
