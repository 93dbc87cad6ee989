"""Pass/fail records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: tuple[Check, ...]
    values: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]
