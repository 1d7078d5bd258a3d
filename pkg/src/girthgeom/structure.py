"""Named pass/fail results for the structural sweeps over constructed
families (used by both the box and the line geometry)."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class StructureCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class StructureReport:
    checks: list[StructureCheck] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(StructureCheck(name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> StructureCheck | None:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def to_doc(self) -> list[dict]:
        return [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]
