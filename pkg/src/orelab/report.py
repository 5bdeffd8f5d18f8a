"""Pass/fail reports shared by law checks, demos and suites.

JSON layout::

    {"suite": str, "status": "pass"|"fail", "seed": int|null,
     "parameters": {...}, "checks": [{"name", "status", "detail"?, "witness"?}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    parameters: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True iff every check passed (an empty report passes vacuously)."""
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None) -> Check:
        check = Check(name, bool(passed), detail, witness)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str | None = None) -> None:
        """Append the checks of ``other``, optionally namespaced."""
        for c in other.checks:
            name = f"{prefix}/{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.passed, c.detail, c.witness))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "status": self.status,
            "seed": self.seed,
            "parameters": _jsonable(self.parameters),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def summary_lines(self) -> list[str]:
        lines = [f"[{self.status.upper()}] {self.name}"]
        for c in self.checks:
            tail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  {c.status:4}  {c.name}{tail}")
        return lines

    def __str__(self) -> str:
        return "\n".join(self.summary_lines())


# Suites and reports share one schema.
SuiteResult = Report


def _jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)
