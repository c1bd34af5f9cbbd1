"""Uniform verification reports with deterministic serialization.

A report passes iff its violation list is empty.  JSON output is stable-key
ordered and omits wall-clock timing so identical invocations are
byte-identical; the text rendering shows timing when present.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Violation:
    location: str
    residual: str
    detail: str = ""

    def to_obj(self) -> dict:
        return {
            "detail": self.detail,
            "location": self.location,
            "residual": self.residual,
        }


@dataclass
class Report:
    suite: str
    violations: list[Violation] = field(default_factory=list)
    annotations: dict[str, str] = field(default_factory=dict)
    elapsed: float | None = None

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    def passed(self) -> bool:
        return not self.violations

    def to_obj(self) -> dict:
        return {
            "annotations": {k: self.annotations[k] for k in sorted(self.annotations)},
            "status": self.status,
            "suite": self.suite,
            "violations": [v.to_obj() for v in self.violations],
        }

    def to_text(self) -> str:
        lines = [f"[{self.status.upper()}] {self.suite}"]
        for k in sorted(self.annotations):
            lines.append(f"    {k}: {self.annotations[k]}")
        for v in self.violations:
            msg = f"    at {v.location}: residual {v.residual}"
            if v.detail:
                msg += f" ({v.detail})"
            lines.append(msg)
        if self.elapsed is not None:
            lines.append(f"    elapsed: {self.elapsed:.3f}s")
        return "\n".join(lines)


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_obj(), sort_keys=True)
    return report.to_text()


def emit_reports(reports: list[Report], fmt: str = "text") -> str:
    reports = sorted(reports, key=lambda r: r.suite)
    if fmt == "json":
        return json.dumps([r.to_obj() for r in reports], sort_keys=True)
    return "\n".join(r.to_text() for r in reports)
