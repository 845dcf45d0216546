"""Check reports: deterministic, JSON-serializable, one suite per law family."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

SCHEMA_VERSION = 1


@dataclass
class Violation:
    law: str
    witness: str
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": self.witness, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class SuiteReport:
    """Outcome of one suite.  Only the first (minimal) witness per law is kept."""

    name: str
    checks: int = 0
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def laws_violated(self) -> list[str]:
        return [v.law for v in self.violations]

    def violation(self, law: str) -> Violation | None:
        for v in self.violations:
            if v.law == law:
                return v
        return None

    def check(self, law: str, witness: Callable[[], str] | str, lhs, rhs) -> bool:
        """Compare lhs and rhs exactly; record the first failure of each law."""
        self.checks += 1
        if lhs == rhs:
            return True
        if self.violation(law) is None:
            w = witness() if callable(witness) else witness
            self.violations.append(Violation(law, w, str(lhs), str(rhs)))
        return False

    def fail(self, law: str, witness: str, lhs: str, rhs: str) -> None:
        self.checks += 1
        if self.violation(law) is None:
            self.violations.append(Violation(law, witness, lhs, rhs))

    def merge(self, other: "SuiteReport") -> None:
        self.checks += other.checks
        for v in other.violations:
            if self.violation(v.law) is None:
                self.violations.append(v)
        self.notes.extend(other.notes)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
            "violations": [v.to_dict() for v in self.violations],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d


@dataclass
class Report:
    suites: list[SuiteReport] = field(default_factory=list)
    parameters: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def suite(self, name: str) -> SuiteReport:
        for s in self.suites:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "status": self.status,
            "suites": [s.to_dict() for s in self.suites],
            "parameters": dict(sorted(self.parameters.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"status: {self.status}"]
        for k, v in sorted(self.parameters.items()):
            lines.append(f"  {k} = {v}")
        for s in self.suites:
            mark = "PASS" if s.passed else "FAIL"
            lines.append(f"[{mark}] {s.name} ({s.checks} checks)")
            for v in s.violations:
                lines.append(f"    {v.law}: witness {v.witness}")
                lines.append(f"        lhs = {v.lhs}")
                lines.append(f"        rhs = {v.rhs}")
            for n in s.notes:
                lines.append(f"    note: {n}")
        return "\n".join(lines) + "\n"
