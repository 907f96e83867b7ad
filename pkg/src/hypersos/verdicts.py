"""Three-valued verdicts shared by the decision procedures.

CERTIFIED_YES and CERTIFIED_NO are only issued on the strength of an exact
computation or an exact certificate; a CERTIFIED_NO always carries a
checkable witness.  Monte Carlo evidence is reported as CERTIFIED_YES only
when the operation's contract says so, and is then flagged in `detail`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any


class Status(str, Enum):
    CERTIFIED_YES = "CERTIFIED_YES"
    CERTIFIED_NO = "CERTIFIED_NO"
    UNKNOWN = "UNKNOWN"


@dataclass
class Verdict:
    status: Status
    witness: Any = None
    detail: str = ""

    @property
    def is_yes(self) -> bool:
        return self.status is Status.CERTIFIED_YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.CERTIFIED_NO

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __repr__(self) -> str:
        extra = f", detail={self.detail!r}" if self.detail else ""
        return f"Verdict({self.status.value}{extra})"


def certified_yes(witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(Status.CERTIFIED_YES, witness, detail)


def certified_no(witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(Status.CERTIFIED_NO, witness, detail)


def unknown(witness: Any = None, detail: str = "") -> Verdict:
    return Verdict(Status.UNKNOWN, witness, detail)


def to_jsonable(obj: Any) -> Any:
    """Convert verdicts/fractions/tuples to plain JSON-ready structures."""
    if isinstance(obj, Verdict):
        return {
            "status": obj.status.value,
            "witness": to_jsonable(obj.witness),
            "detail": obj.detail,
        }
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "to_jsonable"):
        return obj.to_jsonable()
    return obj
