"""Structured pass/fail records for verification runs."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckEntry:
    check_id: str
    passed: bool
    lhs: str | None = None
    rhs: str | None = None
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check_id, "status": "pass" if self.passed else "fail"}
        if not self.passed:
            if self.lhs is not None:
                out["lhs"] = self.lhs
            if self.rhs is not None:
                out["rhs"] = self.rhs
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    suite: str
    anchor: str
    entries: list[CheckEntry] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.entries) and all(e.passed for e in self.entries)

    def add(self, check_id: str, passed: bool, lhs: object = None, rhs: object = None,
            detail: str | None = None) -> bool:
        self.entries.append(CheckEntry(
            check_id, bool(passed),
            None if lhs is None else str(lhs),
            None if rhs is None else str(rhs),
            detail))
        return bool(passed)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.check_id, e.passed, e.lhs, e.rhs, e.detail))

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.wall_time += time.perf_counter() - start

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def to_dict(self, include_time: bool = False) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "anchor": self.anchor,
            "status": "pass" if self.passed else "fail",
            "checks": len(self.entries),
            "entries": [e.to_dict() for e in self.entries],
        }
        if include_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=True)

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"[{status}] {self.suite}: {self.anchor}",
                 f"  {sum(e.passed for e in self.entries)}/{len(self.entries)} checks passed"
                 f" in {self.wall_time:.2f}s"]
        for e in self.entries:
            mark = "ok  " if e.passed else "FAIL"
            line = f"  {mark} {e.check_id}"
            if e.detail:
                line += f"  ({e.detail})"
            lines.append(line)
            if not e.passed:
                if e.lhs is not None:
                    lines.append(f"         lhs: {e.lhs}")
                if e.rhs is not None:
                    lines.append(f"         rhs: {e.rhs}")
        return "\n".join(lines)
