"""Check records and reports, with text and line-delimited JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

PASS = "pass"
FAIL = "fail"
NOT_CERTIFIED = "not-certified"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: tuple[str, ...] = ()
    ref: str = ""
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "check": self.name,
            "status": self.status,
            "witness": list(self.witness),
            "ref": self.ref,
            "detail": self.detail,
        }


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    timing: float | None = None
    notes: list[str] = field(default_factory=list)

    def note(self, text: str) -> None:
        """Informational line; never affects the verdict."""
        self.notes.append(text)

    def add(
        self,
        name: str,
        ok: bool | str,
        witness: Sequence[str] = (),
        ref: str = "",
        detail: str = "",
    ) -> Check:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        chk = Check(name, status, tuple(str(w) for w in witness), ref, detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.ref, c.detail))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def verdict(self) -> str:
        if self.passed:
            return PASS
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        return NOT_CERTIFIED

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def status(self, name: str) -> str:
        return self.get(name).status

    def __iter__(self):
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def to_text(self, show_timing: bool = False) -> str:
        lines = [f"suite {self.suite}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            line = f"  [{c.status.upper():>13}] {c.name:<{width}}"
            if c.witness:
                line += f"  witness=({', '.join(c.witness)})"
            if c.detail:
                line += f"  {c.detail}"
            if c.ref:
                line += f"  <{c.ref}>"
            lines.append(line.rstrip())
        for n in self.notes:
            lines.append(f"  note: {n}")
        failed = len(self.failures())
        tail = f"verdict {self.verdict}: {len(self.checks) - failed}/{len(self.checks)} checks pass"
        if show_timing and self.timing is not None:
            tail += f" in {self.timing:.3f}s"
        lines.append(tail)
        return "\n".join(lines)

    def to_machine(self, show_timing: bool = False) -> str:
        lines = []
        for c in self.checks:
            rec = {"record": "check", "suite": self.suite}
            rec.update(c.as_dict())
            lines.append(json.dumps(rec, ensure_ascii=False, sort_keys=False))
        for n in self.notes:
            lines.append(json.dumps({"record": "note", "suite": self.suite, "text": n}, ensure_ascii=False))
        summary = {
            "record": "summary",
            "suite": self.suite,
            "verdict": self.verdict,
            "checks": len(self.checks),
            "failed": len(self.failures()),
        }
        if show_timing and self.timing is not None:
            summary["seconds"] = round(self.timing, 3)
        lines.append(json.dumps(summary, ensure_ascii=False))
        return "\n".join(lines)


def merge(suite: str, reports: Iterable[Report]) -> Report:
    out = Report(suite)
    for r in reports:
        out.extend(r)
    return out
