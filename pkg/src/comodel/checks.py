"""Axiom-by-axiom verification reports.

Checkers report rather than raise: each axiom yields a CheckResult carrying,
on failure, the first offending basis element (lowest degree, then lowest
index in that degree's basis).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import ChainMap


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    degree: Optional[int] = None
    basis_index: Optional[int] = None

    def describe(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        return f"{self.name}: FAILS on basis element {self.basis_index} in degree {self.degree}"

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if not self.passed:
            out["degree"] = self.degree
            out["basis_index"] = self.basis_index
        return out


@dataclass
class StructureReport:
    subject: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Optional[CheckResult]:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def describe(self) -> str:
        lines = [f"{self.subject}: {'ok' if self.passed else 'FAILED'}"]
        lines.extend("  " + c.describe() for c in self.checks)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def equality_check(name: str, lhs: ChainMap, rhs: ChainMap) -> CheckResult:
    """Compare two chain maps; on failure locate the first offending column."""
    residual = lhs - rhs
    if residual.is_zero():
        return CheckResult(name, True)
    degree = min(residual.components)
    mat = residual.components[degree]
    col = min(j for (_, j) in mat.entries)
    return CheckResult(name, False, degree=degree, basis_index=col)
