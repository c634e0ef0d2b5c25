"""Structured verification reports.

Every checker in the package returns a :class:`Report` instead of a bare
boolean so that a failing identity can be traced to the exact indices that
broke it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    checked: int = 0
    unit: str = "cases"
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, **violation: Any) -> None:
        self.violations.append(violation)

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def summary(self) -> str:
        return f"{self.name}: {len(self.violations)} violations / {self.checked} {self.unit}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checked": self.checked,
            "unit": self.unit,
            "passed": self.passed,
            "violations": self.violations,
        }


def combine(name: str, reports, unit: str = "cases") -> Report:
    out = Report(name, unit=unit)
    for r in reports:
        out.merge(r)
    return out
