from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

RELATIONS = (">=", ">", "=")


def jsonable(obj: Any) -> Any:
    """Convert nested report data to JSON-ready values, rationals as strings."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        raise TypeError("floats are not emitted")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def compare(lhs: Fraction, rhs: Fraction, relation: str) -> bool:
    if relation == ">=":
        return lhs >= rhs
    if relation == ">":
        return lhs > rhs
    if relation == "=":
        return lhs == rhs
    raise ValueError(f"unknown relation {relation!r}")


@dataclass
class BoundReport:
    """Exact two-sided evidence for one inequality on one instance.

    ``skipped`` marks instances outside the hypothesis of the checked
    statement; for those ``holds`` is None and nothing was compared.
    """

    name: str
    instance: dict
    lhs: Fraction | None
    rhs: Fraction | None
    relation: str
    holds: bool | None
    strictness_expected: bool = False
    skipped: bool = False
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.strictness_expected and self.relation != ">":
            raise ValueError("strictness expected but relation is not strict")

    @classmethod
    def evaluate(cls, name, instance, lhs, rhs, relation, strictness_expected=False, witness=None):
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return cls(
            name, instance, lhs, rhs, relation, compare(lhs, rhs, relation),
            strictness_expected, False, witness or {},
        )

    @classmethod
    def skip(cls, name, instance, relation, reason: str):
        return cls(name, instance, None, None, relation, None, False, True, {"reason": reason})

    @property
    def failed(self) -> bool:
        return self.holds is False

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "instance": jsonable(self.instance),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
            "strictness_expected": self.strictness_expected,
            "skipped": self.skipped,
            "witness": jsonable(self.witness),
        }
