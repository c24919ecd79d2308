"""Records shared by the theorem registry, the suite runner and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..expr import ParseError, build, parse_expr, print_expr
from ..ring import CapExceeded, FiniteRing, RingError

STATUSES = ("pass", "fail", "finding", "skipped")


@dataclass(frozen=True)
class InstanceResult:
    """One instance of a check.  ``ring`` is a canonical ring expression so a
    failing entry can be rebuilt; element indices live in ``detail``."""

    ring: str
    status: str
    detail: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"ring": self.ring, "status": self.status}
        if self.params:
            out["params"] = self.params
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class TheoremReport:
    id: str
    kind: str
    statement: str
    instances: tuple = ()
    note: Optional[str] = None

    def count(self, status: str) -> int:
        return sum(1 for r in self.instances if r.status == status)

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.instances if r.status == "fail"]

    @property
    def findings(self) -> list[InstanceResult]:
        return [r for r in self.instances if r.status == "finding"]

    @property
    def status(self) -> str:
        if self.kind == "open":
            return "not-finitely-instantiable"
        if self.kind == "trivial":
            return "trivially-true-finite"
        if self.count("fail"):
            return "fail"
        if self.instances and self.count("skipped") == len(self.instances):
            return "skipped"
        return "pass"

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "statement": self.statement,
            "instances": len(self.instances),
            "passed": self.count("pass"),
            "failed": self.count("fail"),
            "findings": self.count("finding"),
            "skipped": self.count("skipped"),
            "failures": [r.as_dict() for r in self.failures],
            "finding_entries": [r.as_dict() for r in self.findings],
            "entries": [r.as_dict() for r in self.instances],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class TheoremCheck:
    """Registry entry.  ``kind`` is "check" (verdicts), "probe" (records
    witness structure for a statement that holds on every finite instance),
    "trivial" (holds on every finite ring for a reason given in ``refinement``)
    or "open" (no finite instance distinguishes the statement)."""

    id: str
    kind: str
    statement: str
    refinement: str
    defaults: dict
    run: Optional[Callable] = None


class Context:
    """Per-run settings plus a cache of built rings keyed by expression text."""

    def __init__(self, cap: int, seed: int = 0, cache: Optional[dict] = None):
        self.cap = cap
        self.seed = seed
        # shared between checks of one run; keyed by cap as well as text
        self._rings: dict = cache if cache is not None else {}

    def ring(self, text: str) -> FiniteRing:
        canon = print_expr(parse_expr(text))
        key = (self.cap, canon)
        if key not in self._rings:
            self._rings[key] = build(parse_expr(canon), self.cap)
        return self._rings[key]

    def attempt(self, text: str, fn: Callable[[FiniteRing], InstanceResult]) -> InstanceResult:
        """Build ``text`` and run ``fn``; a cap overflow or a violated
        precondition becomes a skipped entry carrying the reason."""
        try:
            canon = print_expr(parse_expr(text))
        except ParseError as exc:
            return InstanceResult(text, "skipped", {"reason": str(exc)})
        try:
            ring = self.ring(canon)
        except CapExceeded as exc:
            return InstanceResult(canon, "skipped", {"reason": str(exc)})
        except RingError as exc:
            return InstanceResult(canon, "skipped", {"reason": f"cannot build: {exc}"})
        try:
            return fn(ring)
        except CapExceeded as exc:
            return InstanceResult(canon, "skipped", {"reason": str(exc)})
        except Precondition as exc:
            return InstanceResult(canon, "skipped", {"reason": str(exc)})


class Precondition(RingError):
    """An instance does not satisfy the hypotheses of the statement."""


def verdict(ring: FiniteRing, ok: bool, **detail) -> InstanceResult:
    return InstanceResult(ring.provenance, "pass" if ok else "fail", detail)
