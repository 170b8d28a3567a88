"""
Verification Reports

The report every CLI command produces. Machine form is JSON with sorted
keys and no timing unless requested, so identical inputs and seeds give
byte-identical output. Text form streams one line per check through rich.
"""

import json
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field
from rich.console import Console
from rich.markup import escape

REPORT_VERSION = "1.0"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"
    INFO = "info"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


_STYLE = {
    Verdict.PASS: "green",
    Verdict.FAIL: "red",
    Verdict.ERROR: "bold red",
    Verdict.INFO: "cyan",
}


class CheckEntry(BaseModel):
    """One check: an identifier, its verdict and an optional payload"""
    id: str
    verdict: Verdict
    payload: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    version: str = REPORT_VERSION
    command: str
    status: Status = Status.PASS
    checks: List[CheckEntry] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    def add(self, id: str, verdict: Verdict, payload: Optional[Dict[str, Any]] = None) -> CheckEntry:
        entry = CheckEntry(id=id, verdict=verdict, payload=payload or {})
        self.checks.append(entry)
        return entry

    def check(self, id: str, passed: bool, payload: Optional[Dict[str, Any]] = None) -> CheckEntry:
        return self.add(id, Verdict.PASS if passed else Verdict.FAIL, payload)

    def finish(self) -> "Report":
        """Derive the overall status from the entries; INFO entries never fail a run"""
        verdicts = {c.verdict for c in self.checks}
        if Verdict.ERROR in verdicts:
            self.status = Status.ERROR
        elif Verdict.FAIL in verdicts:
            self.status = Status.FAIL
        else:
            self.status = Status.PASS
        return self

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.ERROR: 2}[self.status]

    def to_machine(self) -> str:
        data = self.model_dump(mode="json", exclude_none=True)
        return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def _payload_text(payload: Dict[str, Any]) -> str:
    if not payload:
        return ""
    return " " + json.dumps(payload, sort_keys=True, ensure_ascii=False)


class TextSink:
    """Streams entries as they are added, then prints the summary"""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console(highlight=False, soft_wrap=True)

    def entry(self, entry: CheckEntry) -> None:
        style = _STYLE[entry.verdict]
        self.console.print(
            f"[{style}]{entry.verdict.value.upper():5}[/{style}] {escape(entry.id)}"
            f"{escape(_payload_text(entry.payload))}"
        )

    def summary(self, report: Report) -> None:
        counts: Dict[str, int] = {}
        for c in report.checks:
            counts[c.verdict.value] = counts.get(c.verdict.value, 0) + 1
        detail = ", ".join(f"{n} {v}" for v, n in sorted(counts.items()))
        line = f"{report.command}: {report.status.value}"
        if detail:
            line += f" ({detail})"
        if report.timing:
            line += " " + " ".join(f"{k}={v:.3f}s" for k, v in sorted(report.timing.items()))
        self.console.print(escape(line))
