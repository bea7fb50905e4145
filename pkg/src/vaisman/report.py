"""Itemized pass/fail reports shared by every structure check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import linalg as la


def jsonable(x: Any) -> Any:
    """Convert witnesses to JSON-friendly values (rationals become strings)."""
    from .forms import KForm

    if isinstance(x, Fraction):
        return la.fmt(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, KForm):
        return {"degree": x.degree,
                "terms": [{"indices": list(k), "coeff": la.fmt(v)} for k, v in x.terms()]}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        d = {"id": self.id, "description": self.description, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        return d


@dataclass(frozen=True)
class StructureReport:
    """Axiom verdicts for one structure.

    ``checks`` decide :attr:`passed`; ``properties`` are informational
    (e.g. effectivity of a Kaehler algebra) and never gate the result.
    """

    structure: str
    checks: tuple[Check, ...]
    properties: tuple[Check, ...] = ()
    data: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, key: str) -> Check:
        for c in self.checks + self.properties:
            if c.id == key:
                return c
        raise KeyError(key)

    def __contains__(self, key: str) -> bool:
        return any(c.id == key for c in self.checks + self.properties)

    @property
    def failed(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_dict(self) -> dict:
        out = {"structure": self.structure, "pass": self.passed,
               "axioms": [c.to_dict() for c in self.checks]}
        if self.properties:
            out["properties"] = [c.to_dict() for c in self.properties]
        if self.data:
            out["data"] = jsonable(self.data)
        return out

    def to_text(self) -> str:
        lines = [f"{self.structure}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(_line(c))
        for c in self.properties:
            lines.append(_line(c, tag="property"))
        for k, v in self.data.items():
            lines.append(f"  {k} = {jsonable(v)}")
        return "\n".join(lines)


def _line(c: Check, tag: str = "") -> str:
    mark = "pass" if c.passed else "FAIL"
    s = f"  [{mark}] {c.id}: {c.description}" + (f" ({tag})" if tag else "")
    if c.witness is not None:
        s += f"\n         witness: {jsonable(c.witness)}"
    return s
