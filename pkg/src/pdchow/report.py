"""Check results and suite reports with byte-stable JSON output."""

from __future__ import annotations

import json
import platform
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from . import __version__


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[str] = None
    ms: int = 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "witness": self.witness,
            "ms": self.ms,
        }


def equality_check(name: str, lhs, rhs) -> Check:
    """Pass iff lhs == rhs; on failure the witness is the serialized difference."""
    if lhs == rhs:
        return Check(name, True)
    return Check(name, False, witness_of(lhs, rhs))


def witness_of(lhs, rhs) -> str:
    try:
        diff = lhs - rhs
    except Exception:
        return json.dumps({"lhs": repr(lhs), "rhs": repr(rhs)}, sort_keys=True)
    if hasattr(diff, "to_json"):
        return json.dumps(diff.to_json(), sort_keys=True, separators=(",", ":"))
    return json.dumps({"difference": repr(diff)}, sort_keys=True)


def toolchain() -> dict:
    return {
        "package": "pdchow",
        "version": __version__,
        "python": platform.python_version(),
        "implementation": sys.implementation.name,
    }


@dataclass
class SuiteReport:
    suite: str
    genus: int
    checks: List[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "genus": self.genus,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "toolchain": toolchain(),
        }
        out.update(self.extra)
        return out


def timed(name: str, fn: Callable[[], Check], timing: bool) -> Check:
    """Run fn; record wall time only when asked (reports stay byte-stable otherwise)."""
    start = time.perf_counter()
    check = fn()
    check.name = name
    if timing:
        check.ms = int((time.perf_counter() - start) * 1000)
    return check


def dumps(reports: List[SuiteReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2) + "\n"


def render_text(reports: List[SuiteReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"[{r.suite}] genus={r.genus} {'PASS' if r.passed else 'FAIL'}")
        for c in sorted(r.checks, key=lambda c: c.name):
            tail = f"  ({c.ms} ms)" if c.ms else ""
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{tail}")
            if c.witness:
                lines.append(f"       witness: {c.witness}")
    return "\n".join(lines) + "\n"
