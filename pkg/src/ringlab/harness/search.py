"""Bounded scan of a one-parameter ring family for a profile predicate."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..classify import CLASSIFY_CAP, FLAG_ORDER, TRIVIAL_FLAGS, TRIVIAL_REASON, classify_ring
from ..expr import ParseError, build, parse_expr, print_expr
from ..ring import CapExceeded, RingError
from ..structure import CONSTRUCTION_CAP

_PARAM = re.compile(r"\bn\b")


class TrivialPredicate(RingError):
    """The predicate holds on every finite ring, so a search cannot fail."""


@dataclass(frozen=True)
class SearchResult:
    predicate: str
    family: str
    start: int
    bound: int
    instances: tuple  # (n, ring expression, status, witness or reason)
    counterexample: Optional[dict]

    @property
    def exhausted(self) -> bool:
        return self.counterexample is None

    def as_dict(self) -> dict:
        out = {"predicate": self.predicate, "family": self.family, "start": self.start,
               "bound": self.bound,
               "instances": [{"n": n, "ring": r, "status": s, **({"detail": d} if d else {})}
                             for n, r, s, d in self.instances]}
        if self.counterexample is None:
            checked = sum(1 for i in self.instances if i[2] in ("true", "false"))
            out["exhausted"] = {"checked": checked,
                                "skipped": len(self.instances) - checked}
        else:
            out["counterexample"] = self.counterexample
        return out


def instantiate(family: str, n: int) -> str:
    if not _PARAM.search(family):
        raise RingError(f"family {family!r} has no parameter 'n'")
    return _PARAM.sub(str(n), family)


def search_property(predicate: str, family: str, bound: int, start: int = 2, m: int = 3,
                    cap: int = CONSTRUCTION_CAP) -> SearchResult:
    """Evaluate ``predicate`` on ``family`` with n = start..bound, in order.

    Every instance in range is evaluated; the first one where the predicate is
    false is reported with its counterwitness.  Instances above the cap are
    recorded as skipped rather than stopping the scan.
    """
    if predicate in TRIVIAL_FLAGS:
        raise TrivialPredicate(f"{predicate} is trivially true on finite rings "
                               f"({TRIVIAL_REASON[predicate]})")
    if predicate not in FLAG_ORDER:
        raise RingError(f"unknown predicate {predicate!r}")
    if bound < start:
        raise RingError(f"empty range {start}..{bound}")
    instances = []
    first = None
    for n in range(start, bound + 1):
        text = instantiate(family, n)
        try:
            expr = parse_expr(text)
            canon = print_expr(expr)
            ring = build(expr, cap)
        except ParseError:
            raise
        except CapExceeded as exc:
            instances.append((n, text, "skipped", {"reason": str(exc)}))
            continue
        except RingError as exc:
            instances.append((n, text, "skipped", {"reason": f"cannot build: {exc}"}))
            continue
        entry = classify_ring(ring, m=m, cap=min(cap, CLASSIFY_CAP)).flags[predicate]
        detail = entry.witness or ({"reason": entry.reason} if entry.reason else None)
        instances.append((n, canon, entry.status, detail))
        if entry.status == "false" and first is None:
            first = {"n": n, "ring": canon, "witness": entry.witness}
    return SearchResult(predicate, family, start, bound, tuple(instances), first)
