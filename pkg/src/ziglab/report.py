from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a verifier run. Failures are data, not exceptions."""

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        d = {"report": self.name, "ok": self.ok, "checked": self.checked,
             "failures": list(self.failures)}
        d.update(self.details)
        # wall time breaks byte-for-byte reproducibility, so it is opt-in
        d["elapsed_ms"] = round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        d = dict(d)
        name = d.pop("report")
        d.pop("ok", None)
        checked = d.pop("checked")
        failures = d.pop("failures")
        elapsed = d.pop("elapsed_ms", None)
        return cls(name, checked, failures, d, elapsed)


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000.0
