"""Command-line entry point: ``ringlab <command> ...``.

Every command builds one report value (a dict with a fixed key order) and
renders it either as JSON or as aligned text.  Exit codes: 0 success,
2 verification failure or counterwitness found, 1 usage, parse or cap error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .classify import (classify_element, classify_ring, element_ref,
                       potent_nilpotent_decompose, q_bound, uniform_period)
from .expr import ParseError, build, parse_expr
from .harness.config import ConfigError, load_config, resolve_cap
from .harness.search import TrivialPredicate, search_property
from .harness.suite import run_suite, verify_theorem
from .ring import CapExceeded, FiniteRing, RingError
from .structure import characteristic, jacobson_radical

FORMAT = "ringlab/1"
EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# reports ---------------------------------------------------------------------------

def _ring_header(command: str, ring: FiniteRing) -> dict:
    return {"format": FORMAT, "command": command, "ring": ring.provenance, "order": ring.order,
            "characteristic": characteristic(ring).characteristic}


def _element(ring: FiniteRing, text: Optional[str]) -> int:
    if text is None:
        raise UsageError("--elem is required")
    text = text.strip()
    if text.lstrip("-").isdigit():
        x = int(text)
        if not 0 <= x < ring.order:
            raise RingError(f"element index {x} outside 0..{ring.order - 1}")
        return x
    return ring.index_of(text)


def _build(text: str, cap: int) -> FiniteRing:
    return build(parse_expr(text), cap)


def report_classify(args, cap: int):
    ring = _build(args.expr, cap)
    prof = classify_ring(ring, m=args.m)
    rep = _ring_header("classify", ring)
    rep["m"] = args.m
    rep["period"] = uniform_period(ring).as_dict()
    rep["flags"] = {k: v.status for k, v in prof.flags.items()}
    rep["witnesses"] = {k: v.witness for k, v in prof.flags.items() if v.witness is not None}
    rep["reasons"] = {k: v.reason for k, v in prof.flags.items() if v.reason is not None}
    return rep, EXIT_OK


def report_element(args, cap: int):
    ring = _build(args.expr, cap)
    x = _element(ring, args.elem)
    rep = _ring_header("element", ring)
    info = classify_element(ring, x)
    rep["element"] = info.pop("element")
    rep["period"] = info.pop("period")
    rep["properties"] = info
    return rep, EXIT_OK


def report_decompose(args, cap: int):
    ring = _build(args.expr, cap)
    xs = [_element(ring, args.elem)] if args.elem is not None else range(ring.order)
    rep = _ring_header("decompose", ring)
    rows = []
    ok = True
    for x in xs:
        d = potent_nilpotent_decompose(ring, x)
        cert = d.certify(ring) and d.annihilate
        ok &= cert
        rows.append({**d.as_dict(ring), "certified": cert})
    rep["period"] = uniform_period(ring).as_dict()
    rep["decompositions"] = rows
    return rep, EXIT_OK if ok else EXIT_FAIL


def report_radical(args, cap: int):
    ring = _build(args.expr, cap)
    rad = jacobson_radical(ring, method=args.method)
    rep = _ring_header("radical", ring)
    rep["radical"] = {"method": rad.method, "size": len(rad.subset),
                      "nilpotency_index": rad.nilpotency_index,
                      "quotient_order": ring.order // len(rad.subset),
                      "elements": [element_ref(ring, x) for x in rad.subset.indices]}
    return rep, EXIT_OK


def report_uniform_period(args, cap: int):
    ring = _build(args.expr, cap)
    rep = _ring_header("uniform-period", ring)
    p = uniform_period(ring)
    rep["period"] = p.as_dict()
    rep["potent"] = p.n == 1
    return rep, EXIT_OK


def report_qbound(args, cap: int):
    ring = _build(args.expr, cap)
    qb = q_bound(ring, args.n, cap=cap)
    rep = _ring_header("qbound", ring)
    rep["qbound"] = {"n": qb.n, "q": qb.q, "residue_fields": list(qb.field_orders),
                     "matrices_checked": qb.checked, "verified": qb.verified,
                     "violations": list(qb.violations[:10])}
    return rep, EXIT_OK if qb.verified else EXIT_FAIL


def _params(args) -> dict:
    out = {}
    for item in args.set or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    if args.m is not None:
        out["m"] = args.m
    if args.max_group is not None:
        out["max_order"] = "; ".join(f"{p}:{args.max_group}" for p in (2, 3))
    return out


def _theorem_block(r) -> dict:
    d = r.as_dict()
    return {"id": d["id"], "kind": d["kind"], "status": d["status"], "statement": d["statement"],
            "checked": r.note, "instances": d["instances"], "passed": d["passed"],
            "failed": d["failed"], "findings": d["findings"], "skipped": d["skipped"],
            "failures": d["failures"], "finding_entries": d["finding_entries"],
            "entries": d["entries"]}


def report_verify(args, cap: Optional[int]):
    config = load_config(args.config)
    r = verify_theorem(args.id, _params(args), cap=cap, seed=args.seed or config.seed,
                       config=config)
    rep = {"format": FORMAT, "command": "verify", "theorem": _theorem_block(r)}
    return rep, EXIT_FAIL if r.status == "fail" else EXIT_OK


def report_suite(args, cap: Optional[int]):
    config = load_config(args.config)
    if args.seed is not None:
        config.seed = args.seed
    for item in args.set or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise UsageError(f"suite --set expects id.key=value, got {item!r}")
        key, v = item.split("=", 1)
        id, k = key.rsplit(".", 1)
        config.params.setdefault(id.strip(), {})[k.strip()] = v.strip()
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    res = run_suite(config, cap=cap, workers=args.workers, only=only)
    d = res.as_dict()
    rep = {"format": FORMAT, "command": "suite", "status": d["status"], "seed": d["seed"],
           "cap": d["cap"], "theorems": d["theorems"], "instances": d["instances"],
           "reports": [_theorem_block(r) for r in res.reports]}
    return rep, EXIT_FAIL if res.status == "fail" else EXIT_OK


def report_search(args, cap: int):
    if args.family is None or args.bound is None:
        raise UsageError("search needs --family and --bound")
    res = search_property(args.predicate, args.family, args.bound, start=args.start,
                          m=int(args.m) if args.m else 3, cap=cap)
    rep = {"format": FORMAT, "command": "search", **res.as_dict()}
    return rep, EXIT_OK if res.exhausted else EXIT_FAIL


# rendering -----------------------------------------------------------------------

def _scalar(v) -> str:
    if isinstance(v, dict) and set(v) == {"index", "label"}:
        return f"{v['label']} (#{v['index']})"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _table(rows: list[tuple[str, str]], indent: str = "") -> list[str]:
    if not rows:
        return []
    w = max(len(k) for k, _ in rows)
    return [f"{indent}{k.ljust(w)}  {v}" for k, v in rows]


def _theorem_text(t: dict) -> list[str]:
    lines = [f"{t['id']}: {t['status']}", f"  statement: {t['statement']}"]
    if t.get("checked"):
        lines.append(f"  checked:   {t['checked']}")
    lines.append(f"  instances: {t['instances']} (pass {t['passed']}, fail {t['failed']}, "
                 f"finding {t['findings']}, skipped {t['skipped']})")
    for e in t["entries"]:
        if e["status"] == "pass":
            continue
        params = " ".join(f"{k}={v}" for k, v in e.get("params", {}).items())
        lines.append(f"  {e['status'].upper():8s} {e['ring']} {params}".rstrip())
        for k, v in e.get("detail", {}).items():
            lines.append(f"           {k}: {_scalar(v)}")
    return lines


def render_text(rep: dict) -> str:
    lines = []
    cmd = rep["command"]
    head = []
    if "ring" in rep and cmd != "search":
        head = [("ring", rep["ring"]), ("order", str(rep["order"])),
                ("characteristic", str(rep["characteristic"]))]
    if cmd == "classify":
        lines += _table(head + [("m", str(rep["m"])), ("period", _scalar(rep["period"]))])
        lines.append("")
        rows = []
        for k, status in rep["flags"].items():
            extra = rep["witnesses"].get(k) or rep["reasons"].get(k)
            rows.append((k, status + (f"  {_scalar(extra)}" if extra else "")))
        lines += _table(rows, "  ")
    elif cmd == "element":
        lines += _table(head + [("element", _scalar(rep["element"])),
                                ("period", _scalar(rep["period"]))]
                        + [(k, _scalar(v)) for k, v in rep["properties"].items()])
    elif cmd == "decompose":
        lines += _table(head + [("period", _scalar(rep["period"]))])
        for d in rep["decompositions"]:
            lines.append(f"  x = {_scalar(d['x'])}: a = {_scalar(d['a'])} (nil index "
                         f"{d['nil_index']}), b = {_scalar(d['b'])} (b^{d['m_potency']} = b), "
                         f"certified {_scalar(d['certified'])}")
    elif cmd == "radical":
        r = rep["radical"]
        lines += _table(head + [("method", r["method"]), ("size", str(r["size"])),
                         ("nilpotency index", _scalar(r["nilpotency_index"])),
                         ("quotient order", str(r["quotient_order"])),
                         ("elements", _scalar(r["elements"]))])
    elif cmd == "uniform-period":
        lines += _table(head + [("period", _scalar(rep["period"])),
                                ("potent", _scalar(rep["potent"]))])
    elif cmd == "qbound":
        lines += _table(head + [(k, _scalar(v)) for k, v in rep["qbound"].items()])
    elif cmd == "verify":
        lines += _theorem_text(rep["theorem"])
    elif cmd == "suite":
        c = rep["instances"]
        lines.append(f"suite: {rep['status']} ({rep['theorems']} theorems; pass {c['pass']}, "
                     f"fail {c['fail']}, finding {c['finding']}, skipped {c['skipped']})")
        for t in rep["reports"]:
            lines += _theorem_text(t)
    elif cmd == "search":
        lines.append(f"search {rep['predicate']} over {rep['family']}, n = {rep['start']}..{rep['bound']}")
        lines += _table([(str(i["n"]), f"{i['ring']}: {i['status']}"
                          + (f"  {_scalar(i['detail'])}" if i.get("detail") else ""))
                         for i in rep["instances"]], "  ")
        if "counterexample" in rep:
            ce = rep["counterexample"]
            lines.append(f"first counterexample: n = {ce['n']}, {ce['ring']}, {_scalar(ce['witness'])}")
        else:
            e = rep["exhausted"]
            lines.append(f"exhausted: {e['checked']} checked, {e['skipped']} skipped")
    return "\n".join(lines) + "\n"


def render_report(rep: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
    return render_text(rep)


# argument handling -------------------------------------------------------------------

COMMANDS = {
    "classify": report_classify, "element": report_element, "decompose": report_decompose,
    "radical": report_radical, "uniform-period": report_uniform_period, "qbound": report_qbound,
    "verify": report_verify, "suite": report_suite, "search": report_search,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, help="element cap for constructions")
    common.add_argument("--seed", type=int)
    common.add_argument("--config", help="suite config file (INI)")

    p = _Parser(prog="ringlab", description="Exhaustive computations with finite rings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("classify", "element", "decompose", "radical", "uniform-period", "qbound"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("expr", help='ring expression, e.g. "M(2, Z(4))"')
        if name in ("element", "decompose"):
            s.add_argument("--elem", help="element index or label")
        if name == "classify":
            s.add_argument("--m", type=int, default=3)
        if name == "qbound":
            s.add_argument("--n", type=int, default=2)
        if name == "radical":
            s.add_argument("--method", choices=("auto", "structural", "brute"), default="auto")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("id")
    s.add_argument("--m", help="value or range, e.g. 2..10")
    s.add_argument("--max-group", type=int, help="largest group order for p = 2 and p = 3")
    s.add_argument("--set", action="append", metavar="KEY=VALUE")
    s = sub.add_parser("suite", parents=[common])
    s.add_argument("--only", help="comma-separated theorem ids")
    s.add_argument("--workers", type=int)
    s.add_argument("--set", action="append", metavar="ID.KEY=VALUE")
    s = sub.add_parser("search", parents=[common])
    s.add_argument("predicate", help="profile flag, e.g. nil_clean")
    s.add_argument("--family", help='expression with parameter n, e.g. "M(2, Z(n))"')
    s.add_argument("--bound", type=int)
    s.add_argument("--start", type=int, default=2)
    s.add_argument("--m", help="m for m-dependent flags")
    return p


def execute(argv: list[str]) -> tuple[Optional[dict], int, Optional[str], str]:
    """(report, exit code, error message, output format)."""
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command in ("verify", "suite"):
            cap = args.cap  # config and per-check caps apply when no flag is given
        else:
            cap = resolve_cap(args.cap, load_config(args.config).cap if args.config else None)
        rep, code = COMMANDS[args.command](args, cap)
        return rep, code, None, fmt
    except UsageError as exc:
        msg = f"usage error: {exc}"
    except ParseError as exc:
        msg = f"parse error: {exc}"
    except CapExceeded as exc:
        msg = f"cap exceeded: {exc}"
    except (TrivialPredicate, ConfigError) as exc:
        msg = str(exc)
    except KeyError as exc:
        msg = str(exc.args[0]) if exc.args else "unknown key"
    except RingError as exc:
        msg = f"error: {exc}"
    return None, EXIT_ERROR, msg, fmt


def main(argv: Optional[list[str]] = None) -> int:
    rep, code, err, fmt = execute(sys.argv[1:] if argv is None else argv)
    if err is not None:
        sys.stderr.write(err + "\n")
        return code
    sys.stdout.write(render_report(rep, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
