"""Validation reports: violations are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    data: Any = None

    def to_dict(self) -> dict:
        out = {"clause": self.clause, "message": self.message}
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, clause: str, message: str, data: Any = None) -> None:
        self.violations.append(Violation(clause, message, data))

    def clauses(self) -> set:
        return {v.clause for v in self.violations}

    def to_dict(self) -> dict:
        out = {"valid": self.valid, "violations": [v.to_dict() for v in self.violations]}
        if self.info:
            out["info"] = self.info
        return out

    def __bool__(self) -> bool:
        return self.valid
