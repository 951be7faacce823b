"""Check records and the versioned report document (JSON canonical, markdown optional)."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .serialization import SCHEMA_VERSION

PASS, FAIL = "pass", "fail"


@dataclass
class Outcome:
    ok: bool
    samples: int
    counterexample: Any = None
    details: Any = None


@dataclass
class CheckRecord:
    name: str
    status: str
    samples: int
    timing_ms: float
    counterexample: Any = None
    details: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "samples": self.samples,
               "timing_ms": round(self.timing_ms, 3)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details is not None:
            out["details"] = self.details
        return out


def run_check(name: str, thunk: Callable[[], Outcome]) -> CheckRecord:
    start = time.perf_counter()
    out = thunk()
    elapsed = (time.perf_counter() - start) * 1000
    return CheckRecord(name, PASS if out.ok else FAIL, out.samples, elapsed, out.counterexample, out.details)


def run_checks(checks: Iterable[tuple[str, Callable[[], Outcome]]]) -> list[CheckRecord]:
    return [run_check(name, thunk) for name, thunk in checks]


@dataclass
class Report:
    command: str
    seed: int
    checks: list[CheckRecord]
    results: Any = None
    inputs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "seed": self.seed,
            "inputs": self.inputs,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary(),
        }
        if self.results is not None:
            out["results"] = self.results
        return out

    def to_markdown(self) -> str:
        s = self.summary()
        lines = [
            f"# vcyc {self.command}",
            "",
            f"seed {self.seed}; {s['passed']}/{s['total']} checks pass",
            "",
            "| check | status | samples | ms |",
            "|---|---|---|---|",
        ]
        for c in self.checks:
            name = c.name.replace("|", "\\|")
            lines.append(f"| {name} | {c.status.upper()} | {c.samples} | {c.timing_ms:.1f} |")
        failing = [c for c in self.checks if not c.passed]
        if failing:
            lines += ["", "## Counterexamples", ""]
            for c in failing:
                lines.append(f"- **{c.name}**: `{c.counterexample}`")
        return "\n".join(lines) + "\n"


def error_payload(command: str, exc) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "error": exc.payload()}


def strip_timing(doc: dict) -> dict:
    """A copy of a report document without timing fields, for determinism comparisons."""
    out = dict(doc)
    out["checks"] = [{k: v for k, v in c.items() if k != "timing_ms"} for c in doc.get("checks", [])]
    return out
