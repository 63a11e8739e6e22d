"""Pass/fail bookkeeping shared by the fixed checks and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _jsonable(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "ok": self.ok,
        }


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    def expect(self, name: str, expected: Any, actual: Any) -> Check:
        check = Check(name, expected, actual)
        self.checks.append(check)
        return check

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            detail = "" if c.ok else f" (expected {c.expected}, got {c.actual})"
            out.append(f"[{mark}] {self.name}: {c.name}{detail}")
        return out
