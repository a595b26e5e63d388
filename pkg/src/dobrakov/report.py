"""Verdict records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from dobrakov.lattice import LatticeValue, format_fraction, format_value
from dobrakov.setring import FiniteSet, SetClass

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"


@dataclass
class PropertyReport:
    """Outcome of one verification.

    A ``fails`` verdict carries a witness: the sets and values exhibiting
    the violation, so it can be re-evaluated independently.  ``moduli``
    maps ε to the computed δ where a modulus applies.
    """

    name: str
    verdict: str
    witness: dict[str, Any] | None = None
    moduli: dict[Any, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in (HOLDS, FAILS, VACUOUS):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAILS and not self.witness:
            raise ValueError(f"{self.name}: failing verdict without witness")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    def line(self) -> str:
        text = f"{self.name}: {self.verdict}"
        if self.witness:
            text += " witness " + ", ".join(f"{k}={_plain(v)}" for k, v in self.witness.items())
        return text

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "witness": to_jsonable(self.witness) if self.witness else None,
            "moduli": {_plain(k): to_jsonable(v) for k, v in self.moduli.items()},
            "notes": list(self.notes),
            "details": to_jsonable(self.details),
        }


def _plain(v: Any) -> str:
    j = to_jsonable(v)
    return j if isinstance(j, str) else str(j)


def to_jsonable(obj: Any) -> Any:
    """Convert fractions, sets, lattice values and reports to JSON types.

    Rationals become ``"p/q"`` strings so no precision is lost.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, (Fraction, float)):
        return format_fraction(obj)
    if isinstance(obj, LatticeValue):
        return format_value(obj)
    if isinstance(obj, FiniteSet):
        return str(obj)
    if isinstance(obj, SetClass):
        return [str(s) for s in obj]
    if isinstance(obj, PropertyReport):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {_plain(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)
