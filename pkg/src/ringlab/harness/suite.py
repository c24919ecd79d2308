"""Running registered checks: one theorem, or the whole configured suite."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .config import SuiteConfig, load_config, resolve_cap
from .model import Context, TheoremReport
from .registry import get


def verify_theorem(id: str, params: Optional[dict] = None, cap: Optional[int] = None,
                   seed: int = 0, config: Optional[SuiteConfig] = None,
                   cache: Optional[dict] = None) -> TheoremReport:
    """Run check ``id`` on its configured instances; ``params`` override
    individual configuration keys.  Raises KeyError for an unknown id."""
    entry = get(id)
    config = config or load_config()
    merged = config.params_for(id)
    merged.update({k: str(v) for k, v in (params or {}).items()})
    if cap is None:
        cap = int(merged["cap"]) if "cap" in merged else resolve_cap(None, config.cap)
    if entry.run is None:
        return TheoremReport(id, entry.kind, entry.statement, (), entry.refinement)
    ctx = Context(cap, seed, cache)
    missing = [k for k in _required(entry) if k not in merged]
    if missing:
        raise KeyError(f"{id}: missing instance parameter {missing[0]!r}")
    instances = tuple(entry.run(merged, ctx))
    return TheoremReport(id, entry.kind, entry.statement, instances, entry.refinement)


def _required(entry) -> list[str]:
    # parameter names the check reads, taken from the packaged defaults
    return sorted(load_config().params_for(entry.id).keys() - {"cap"})


@dataclass(frozen=True)
class SuiteReport:
    reports: tuple[TheoremReport, ...]
    seed: int
    cap: Optional[int]

    @property
    def status(self) -> str:
        return "fail" if any(r.status == "fail" for r in self.reports) else "pass"

    def as_dict(self) -> dict:
        counts = {s: 0 for s in ("pass", "fail", "finding", "skipped")}
        for r in self.reports:
            for s in counts:
                counts[s] += r.count(s)
        return {"status": self.status, "seed": self.seed, "cap": self.cap,
                "theorems": len(self.reports), "instances": counts,
                "reports": [r.as_dict() for r in self.reports]}


def _run_one(args, cache: Optional[dict] = None) -> TheoremReport:
    id, cap, seed, config = args
    return verify_theorem(id, cap=cap, seed=seed, config=config, cache=cache)


def run_suite(config: Optional[SuiteConfig] = None, cap: Optional[int] = None,
              workers: Optional[int] = None, only: Optional[list[str]] = None) -> SuiteReport:
    """Run every configured check.  ``cap`` (a command-line cap) overrides all
    config caps; reports come back in configured order whatever the worker
    count.  The suite passes iff no instance fails; findings are reported but
    do not fail it."""
    config = config or load_config()
    ids = [i for i in config.checks if only is None or i in only]
    for i in ids:
        get(i)
    workers = workers if workers is not None else config.workers
    jobs = [(i, cap, config.seed, config) for i in ids]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        cache: dict = {}
        reports = [_run_one(j, cache) for j in jobs]
    return SuiteReport(tuple(reports), config.seed, cap if cap is not None else config.cap)
