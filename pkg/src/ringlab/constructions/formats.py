"""Plain-text formats for algebra presentations and Morita data.

Both formats are line based; ``#`` starts a comment, blank lines are ignored
and integers are decimal.  A header of ``key value`` lines is followed by
named table sections, each a keyword line and then its rows.

Algebra presentation::

    modulus 4
    rank 2
    unit 0 1
    table            # rank^2 rows, row (i, j) = coordinates of e_i e_j
    0 0
    1 0
    1 0
    0 1

Morita data (A and B are ring expressions; M and N carry zero at index 0)::

    A Z(4)
    B Z(4)
    M 2
    N 2
    m_add   # |M| rows of |M| entries
    n_add   # |N| x |N|
    am      # |A| x |M|, left action a.m
    mb      # |M| x |B|
    bn      # |B| x |N|
    na      # |N| x |A|
    phi     # |M| x |N|, entries are indices of A
    psi     # |N| x |M|, entries are indices of B
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..ring import FiniteRing, RingError
from .morita import MoritaData
from .tensor import AlgebraPresentation


class FormatError(RingError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(tokens, no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def _sections(text: str, header_keys: set, table_keys: set):
    header: dict = {}
    tables: dict = {}
    current = None
    for no, toks in _lines(text):
        key = toks[0]
        if key in table_keys and len(toks) == 1:
            if key in tables:
                raise FormatError(f"duplicate section {key!r}", no)
            tables[key] = []
            current = key
        elif key in header_keys and current is None:
            header[key] = (toks[1:], no)
        elif current is not None:
            tables[current].append((_ints(toks, no), no))
        else:
            raise FormatError(f"unexpected {key!r}", no)
    return header, tables


def _table(tables, key, rows, cols):
    if key not in tables:
        raise FormatError(f"missing section {key!r}", 0)
    data = tables[key]
    if len(data) != rows:
        line = data[-1][1] if data else 0
        raise FormatError(f"section {key!r} needs {rows} rows, found {len(data)}", line)
    for vals, no in data:
        if len(vals) != cols:
            raise FormatError(f"section {key!r} rows need {cols} entries", no)
    return np.array([v for v, _ in data], dtype=np.int64).reshape(rows, cols)


def _header_int(header, key):
    if key not in header:
        raise FormatError(f"missing header {key!r}", 0)
    toks, no = header[key]
    vals = _ints(toks, no)
    if len(vals) != 1:
        raise FormatError(f"{key} takes one integer", no)
    return vals[0]


def parse_algebra(text: str, name: str = "ALG") -> AlgebraPresentation:
    header, tables = _sections(text, {"modulus", "rank", "unit"}, {"table"})
    c = _header_int(header, "modulus")
    r = _header_int(header, "rank")
    if c < 2 or r < 1:
        raise FormatError("modulus must be >= 2 and rank >= 1", header["modulus"][1])
    toks, no = header.get("unit", (None, 0))
    if toks is None:
        raise FormatError("missing header 'unit'", 0)
    unit = _ints(toks, no)
    if len(unit) != r:
        raise FormatError(f"unit needs {r} coordinates", no)
    const = _table(tables, "table", r * r, r).reshape(r, r, r)
    return AlgebraPresentation(c, r, const, tuple(unit), name)


def format_algebra(pres: AlgebraPresentation) -> str:
    lines = [f"modulus {pres.modulus}", f"rank {pres.rank}",
             "unit " + " ".join(str(u) for u in pres.unit), "table"]
    for row in pres.constants.reshape(-1, pres.rank):
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


_MORITA_TABLES = ("m_add", "n_add", "am", "mb", "bn", "na", "phi", "psi")


def parse_morita(text: str, resolve: Callable[[str], FiniteRing]) -> MoritaData:
    """``resolve`` turns the A/B ring expressions into rings."""
    header, tables = _sections(text, {"A", "B", "M", "N"}, set(_MORITA_TABLES))
    rings = {}
    for key in ("A", "B"):
        if key not in header:
            raise FormatError(f"missing header {key!r}", 0)
        toks, no = header[key]
        try:
            rings[key] = resolve(" ".join(toks))
        except RingError as exc:
            raise FormatError(f"ring {key}: {exc}", no) from None
    m = _header_int(header, "M")
    n = _header_int(header, "N")
    a, b = rings["A"].order, rings["B"].order
    shapes = {"m_add": (m, m), "n_add": (n, n), "am": (a, m), "mb": (m, b),
              "bn": (b, n), "na": (n, a), "phi": (m, n), "psi": (n, m)}
    t = {k: _table(tables, k, *shapes[k]) for k in _MORITA_TABLES}
    return MoritaData(rings["A"], rings["B"], **t)


def format_morita(data: MoritaData, a_expr: str, b_expr: str) -> str:
    lines = [f"A {a_expr}", f"B {b_expr}", f"M {data.m_order}", f"N {data.n_order}"]
    for key in _MORITA_TABLES:
        lines.append(key)
        for row in getattr(data, key):
            lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
