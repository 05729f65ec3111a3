"""Itemised pass/fail reports with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import LinMap, Space

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool | None, witness: dict | None = None, detail: str = "") -> Check:
        status = UNDECIDED if ok is None else (PASS if ok else FAIL)
        chk = Check(name, status, witness or {}, detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"title": self.title, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def __str__(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.name}" + (f"  {c.witness}" if c.witness else ""))
        return "\n".join(lines)


def map_witness(f: LinMap, g: LinMap, source: Space | None = None) -> dict:
    """Witness for f != g: the first differing basis element and both images."""
    j = f.first_difference(g)
    if j is None:
        return {}
    src = source or f.source
    return {"basis": src.label(j), "lhs": f.target.describe(f.cols[j]), "rhs": g.target.describe(g.cols[j])}


def compare(report: Report, name: str, f: LinMap, g: LinMap, source: Space | None = None) -> bool:
    w = map_witness(f, g, source)
    report.add(name, not w, w)
    return not w
