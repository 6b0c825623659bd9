"""Pass/fail records shared by validators, identity checks and suites."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckReport:
    name: str
    passed: bool
    cases: int = 0
    witness: Optional[dict] = None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "cases": self.cases}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def __str__(self) -> str:
        tail = f" witness={self.witness}" if self.witness else ""
        return f"{self.name}: {self.status.upper()} ({self.cases} cases){tail}"


ValidationReport = CheckReport


def merge_reports(name: str, reports) -> CheckReport:
    """Conjunction of several reports; the first failure supplies the witness."""
    reports = list(reports)
    failed = next((r for r in reports if not r.passed), None)
    return CheckReport(name, failed is None, sum(r.cases for r in reports),
                       None if failed is None else {"check": failed.name, **(failed.witness or {})})
