"""Check records and deterministic report emission.

Reports are designed for golden-file testing: given the same configuration,
both the text and the JSON emission are byte-identical across runs, so no
wall-clock data is serialized (timings stay on the in-memory records).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class CheckRecord:
    """Outcome of one verification check.

    check_id is a stable dotted identifier; anchor describes, in plain
    language, the mathematical statement the check verifies; detail holds
    the first-mismatch data on failure or a short measurement on success.
    """

    check_id: str
    anchor: str
    status: str
    detail: str = ""
    elapsed: float = 0.0  # in-memory only; never serialized

    def to_json_dict(self) -> dict:
        return {
            "id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    suite: str
    parameters: dict[str, str]
    records: list[CheckRecord] = field(default_factory=list)

    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=lambda r: r.check_id)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.records)

    def to_json_dict(self) -> dict:
        counts = self.counts
        return {
            "suite": self.suite,
            "parameters": {k: self.parameters[k] for k in sorted(self.parameters)},
            "checks": [r.to_json_dict() for r in self.sorted_records()],
            "summary": {
                "pass": counts[PASS],
                "fail": counts[FAIL],
                "skipped": counts[SKIPPED],
            },
        }


def emit_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2) + "\n"


def emit_text(report: VerificationReport) -> str:
    lines = [f"suite: {report.suite}"]
    params = " ".join(f"{k}={report.parameters[k]}" for k in sorted(report.parameters))
    lines.append(f"parameters: {params}")
    width = max((len(r.status) for r in report.records), default=4)
    for r in report.sorted_records():
        line = f"[{r.status:<{width}}] {r.check_id}  {r.anchor}"
        if r.detail:
            line += f"  -- {r.detail}"
        lines.append(line)
    c = report.counts
    lines.append(f"summary: {c[PASS]} passed, {c[FAIL]} failed, {c[SKIPPED]} skipped")
    return "\n".join(lines) + "\n"


def emit(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report)
    if fmt == "text":
        return emit_text(report)
    raise ValueError(f"unknown report format {fmt!r}")
