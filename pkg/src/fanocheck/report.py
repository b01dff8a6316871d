"""Check reports and their JSON / markdown renderings."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence-only"
FLAGGED = "flagged-discrepancy"
STATUSES = (PASS, FAIL, EVIDENCE, FLAGGED)


@dataclass
class CheckReport:
    checkId: str
    scenario: str
    status: str
    expected: str
    computed: str
    anchor: str
    durationMs: int = 0
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return asdict(self)


def compare(check_id: str, scenario: str, expected, computed, anchor: str, detail: str = "") -> CheckReport:
    """Pass iff ``expected == computed`` exactly."""
    status = PASS if expected == computed else FAIL
    return CheckReport(check_id, scenario, status, str(expected), str(computed), anchor, detail=detail)


class Timer:
    def __init__(self):
        self.ms = 0


@contextmanager
def timed():
    t = Timer()
    start = time.perf_counter()
    try:
        yield t
    finally:
        t.ms = int((time.perf_counter() - start) * 1000)


def run_check(fn: Callable[[], CheckReport | list[CheckReport]]) -> list[CheckReport]:
    """Run one check function, stamping elapsed time on its reports."""
    with timed() as t:
        out = fn()
    out = out if isinstance(out, list) else [out]
    for r in out:
        r.durationMs = t.ms
    return out


def to_json(reports: Iterable[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False)


def _md_cell(s: str) -> str:
    return s.replace("|", "\\|").replace("\n", " ")


def to_markdown(reports: Iterable[CheckReport]) -> str:
    lines = ["| check | status | expected | computed | anchor |", "|---|---|---|---|---|"]
    for r in reports:
        lines.append("| " + " | ".join(_md_cell(x) for x in (r.checkId, r.status, r.expected, r.computed,
                                                             r.anchor)) + " |")
    return "\n".join(lines)
