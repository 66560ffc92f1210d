"""Report structures and canonical serialization for the suite runner.

Reports are deterministic: rows are emitted in the order produced by the
(seeded) suites, keys are sorted in the JSON form, and timing data is
excluded unless explicitly requested, so identical configuration and seed
give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
FINDING = "finding"


@dataclass
class CheckRow:
    """One verified statement: pass, fail (a bug), or finding (an
    empirically false statement reported with full witness data)."""

    name: str
    status: str
    detail: dict | None = None
    counterexample: dict | None = None
    replay: dict | None = None
    timing: float | None = None

    def as_dict(self, include_timing: bool = False) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.replay is not None:
            out["replay"] = self.replay
        if include_timing and self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out


@dataclass
class Report:
    suite: str
    params: dict
    rows: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(r.status == PASS for r in self.rows)

    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, FINDING: 0}
        for r in self.rows:
            counts[r.status] = counts.get(r.status, 0) + 1
        return counts

    def exit_code(self, findings_fail: bool = False) -> int:
        s = self.summary()
        if s[FAIL] or (findings_fail and s[FINDING]):
            return 1
        return 0

    def as_dict(self, include_timing: bool = False) -> dict:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "params": self.params,
            "summary": self.summary(),
            "rows": [r.as_dict(include_timing) for r in self.rows],
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.as_dict(include_timing), sort_keys=True,
                          indent=2) + "\n"

    def to_markdown(self, include_timing: bool = False) -> str:
        lines = [f"# suite: {self.suite}", ""]
        if self.params:
            lines.append("## parameters")
            lines.append("")
            for k in sorted(self.params):
                lines.append(f"- {k}: {self.params[k]}")
            lines.append("")
        s = self.summary()
        lines.append(f"## checks ({s[PASS]} pass, {s[FAIL]} fail, "
                     f"{s[FINDING]} finding)")
        lines.append("")
        header = "| check | status | detail |"
        rule = "| --- | --- | --- |"
        if include_timing:
            header = "| check | status | detail | seconds |"
            rule = "| --- | --- | --- | --- |"
        lines.append(header)
        lines.append(rule)
        for r in self.rows:
            detail = ""
            if r.detail is not None:
                detail = "; ".join(f"{k}={r.detail[k]}"
                                   for k in sorted(r.detail))
            if r.counterexample is not None:
                detail += " counterexample: " + json.dumps(
                    r.counterexample, sort_keys=True)
            cells = [r.name, r.status, detail]
            if include_timing:
                cells.append("" if r.timing is None else f"{r.timing:.3f}")
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        return "\n".join(lines)


def emit_report(report: Report, fmt: str = "json",
                include_timing: bool = False) -> str:
    if fmt == "json":
        return report.to_json(include_timing)
    if fmt == "markdown":
        return report.to_markdown(include_timing)
    raise ValueError(f"unknown report format {fmt!r}")
