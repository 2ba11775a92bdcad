"""Structured pass/fail records shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    exploratory: bool = False

    def as_dict(self) -> dict:
        status = "pass" if self.passed else "fail"
        if self.exploratory:
            status = f"exploratory-{status}"
        out = {"check": self.name, "status": status}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "",
            exploratory: bool = False) -> None:
        self.checks.append(CheckResult(name, bool(passed), detail, exploratory))

    @property
    def passed(self) -> bool:
        """True when every non-exploratory check passed."""
        return all(c.passed for c in self.checks if not c.exploratory)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed and not c.exploratory]

    def as_dicts(self) -> list[dict]:
        return [c.as_dict() for c in self.checks]
