"""Ring expression language.

Grammar (``x`` or ``×`` is the direct product and binds looser than
constructor application)::

    expr   := term (('x' | '×') term)*
    term   := '(' expr ')' | Z(n) | GF(p, k) | M(n, expr) | T(n, expr)
            | K(expr, s=scalar) | MS(n, expr, s=scalar) | GR(expr, group)
            | END(C(d) + C(d) ...) | IDZ(expr, gens) | QUO(expr, gens)
            | TEN(expr, expr) | POLY(c, d) | ALG("file") | MOR(expr, gens, gens)
            | MORITA("file")
    scalar := int | '#' int            (integer times one, or an element index)
    gens   := 'J' | '[' item (',' item)* ']'    item := int | "label"
    group  := gterm (('x' | '×') gterm)*
    gterm  := '(' group ')' | C(n) | D(n) | S3

``D(n)`` is the dihedral group of order 2n.  ``TEN`` accepts ``Z``, ``GF``,
``POLY``, ``ALG`` and nested ``TEN`` operands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, prod
from pathlib import Path
from typing import Optional, Union

from .ring import CapExceeded, FiniteRing, RingError
from .structure import CONSTRUCTION_CAP, direct_product, ideal_closure, jacobson_radical


class ParseError(RingError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.msg, self.line, self.col = msg, line, col


class SizeError(CapExceeded):
    """A subexpression's order exceeds the cap; raised before construction."""

    def __init__(self, subexpr: str, size: int, cap: int):
        super().__init__(subexpr, size, cap)
        self.subexpr = subexpr


# AST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElemIndex:
    index: int


Scalar = Union[int, ElemIndex]


@dataclass(frozen=True)
class RadicalGens:
    pass


Gens = Union[RadicalGens, tuple]


@dataclass(frozen=True)
class GCyclic:
    n: int


@dataclass(frozen=True)
class GDihedral:
    n: int


@dataclass(frozen=True)
class GS3:
    pass


@dataclass(frozen=True)
class GProduct:
    factors: tuple


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Field:
    p: int
    k: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Matrix:
    n: int
    inner: object


@dataclass(frozen=True)
class Triangular:
    n: int
    inner: object


@dataclass(frozen=True)
class FormalK:
    inner: object
    s: Scalar


@dataclass(frozen=True)
class FormalMS:
    n: int
    inner: object
    s: Scalar


@dataclass(frozen=True)
class GroupRingE:
    inner: object
    group: object


@dataclass(frozen=True)
class Endo:
    invariants: tuple


@dataclass(frozen=True)
class Idz:
    inner: object
    gens: Gens


@dataclass(frozen=True)
class Quo:
    inner: object
    gens: Gens


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object


@dataclass(frozen=True)
class Poly:
    c: int
    d: int


@dataclass(frozen=True)
class AlgFile:
    path: str


@dataclass(frozen=True)
class Mor:
    inner: object
    m_gens: Gens
    n_gens: Gens


@dataclass(frozen=True)
class MoritaFile:
    path: str


# printing --------------------------------------------------------------------------

def _str_lit(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _scalar(s: Scalar) -> str:
    return f"#{s.index}" if isinstance(s, ElemIndex) else str(s)


def _gens(g: Gens) -> str:
    if isinstance(g, RadicalGens):
        return "J"
    return "[" + ", ".join(_str_lit(v) if isinstance(v, str) else str(v) for v in g) + "]"


def print_group(g) -> str:
    if isinstance(g, GCyclic):
        return f"C({g.n})"
    if isinstance(g, GDihedral):
        return f"D({g.n})"
    if isinstance(g, GS3):
        return "S3"
    if isinstance(g, GProduct):
        return " x ".join(f"({print_group(f)})" if isinstance(f, GProduct) else print_group(f)
                          for f in g.factors)
    raise TypeError(g)


def print_expr(e) -> str:
    """Canonical text; ``parse_expr(print_expr(e)) == e``."""
    if isinstance(e, Cyclic):
        return f"Z({e.n})"
    if isinstance(e, Field):
        return f"GF({e.p})" if e.k == 1 else f"GF({e.p},{e.k})"
    if isinstance(e, Product):
        return " x ".join(f"({print_expr(f)})" if isinstance(f, Product) else print_expr(f)
                          for f in e.factors)
    if isinstance(e, Matrix):
        return f"M({e.n}, {print_expr(e.inner)})"
    if isinstance(e, Triangular):
        return f"T({e.n}, {print_expr(e.inner)})"
    if isinstance(e, FormalK):
        return f"K({print_expr(e.inner)}, s={_scalar(e.s)})"
    if isinstance(e, FormalMS):
        return f"MS({e.n}, {print_expr(e.inner)}, s={_scalar(e.s)})"
    if isinstance(e, GroupRingE):
        return f"GR({print_expr(e.inner)}, {print_group(e.group)})"
    if isinstance(e, Endo):
        return "END(" + "+".join(f"C({d})" for d in e.invariants) + ")"
    if isinstance(e, Idz):
        return f"IDZ({print_expr(e.inner)}, {_gens(e.gens)})"
    if isinstance(e, Quo):
        return f"QUO({print_expr(e.inner)}, {_gens(e.gens)})"
    if isinstance(e, Tensor):
        return f"TEN({print_expr(e.left)}, {print_expr(e.right)})"
    if isinstance(e, Poly):
        return f"POLY({e.c},{e.d})"
    if isinstance(e, AlgFile):
        return f"ALG({_str_lit(e.path)})"
    if isinstance(e, Mor):
        return f"MOR({print_expr(e.inner)}, {_gens(e.m_gens)}, {_gens(e.n_gens)})"
    if isinstance(e, MoritaFile):
        return f"MORITA({_str_lit(e.path)})"
    raise TypeError(e)


# tokenizer and parser ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<int>-?\d+)
  | (?P<times>×|x(?=[A-Z(\s]|$)) | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\]|\\.)*") | (?P<punct>[(),\[\]=#+])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            if kind == "punct":
                kind = tok
            out.append(Token(kind, tok, line, col))
        pos = m.end()
    end_col = len(text) - line_start + 1
    out.append(Token("eof", "", line, end_col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str, what: Optional[str] = None) -> Token:
        t = self.peek()
        if t.kind != kind:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {what or kind!r}, found {found}", t.line, t.col)
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.peek().kind == kind:
            self.i += 1
            return True
        return False

    def integer(self, lo: Optional[int] = None, what: str = "integer") -> int:
        t = self.take("int", what)
        v = int(t.text)
        if lo is not None and v < lo:
            raise ParseError(f"{what} must be >= {lo}, got {v}", t.line, t.col)
        return v

    def expr(self):
        factors = [self.term()]
        while self.accept("times"):
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self):
        t = self.peek()
        if self.accept("("):
            e = self.expr()
            self.take(")", ")")
            return e
        if t.kind != "name":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected a ring constructor, found {found}", t.line, t.col)
        self.i += 1
        handler = getattr(self, f"_ctor_{t.text}", None)
        if handler is None:
            raise ParseError(f"unknown constructor {t.text!r}", t.line, t.col)
        self.take("(", "(")
        node = handler()
        self.take(")", ")")
        return node

    def comma(self):
        self.take(",", ",")

    def _ctor_Z(self):
        return Cyclic(self.integer(2, "modulus"))

    def _ctor_GF(self):
        p = self.integer(2, "characteristic")
        k = 1
        if self.accept(","):
            k = self.integer(1, "degree")
        return Field(p, k)

    def _ctor_M(self):
        n = self.integer(1, "matrix size")
        self.comma()
        return Matrix(n, self.expr())

    def _ctor_T(self):
        n = self.integer(1, "matrix size")
        self.comma()
        return Triangular(n, self.expr())

    def scalar_arg(self) -> Scalar:
        t = self.take("name", "s")
        if t.text != "s":
            raise ParseError("expected 's='", t.line, t.col)
        self.take("=", "=")
        if self.accept("#"):
            return ElemIndex(self.integer(0, "element index"))
        return self.integer(None, "scalar")

    def _ctor_K(self):
        inner = self.expr()
        self.comma()
        return FormalK(inner, self.scalar_arg())

    def _ctor_MS(self):
        n = self.integer(2, "matrix size")
        self.comma()
        inner = self.expr()
        self.comma()
        return FormalMS(n, inner, self.scalar_arg())

    def _ctor_GR(self):
        inner = self.expr()
        self.comma()
        return GroupRingE(inner, self.group())

    def group(self):
        factors = [self.gterm()]
        while self.accept("times"):
            factors.append(self.gterm())
        return factors[0] if len(factors) == 1 else GProduct(tuple(factors))

    def gterm(self):
        t = self.peek()
        if self.accept("("):
            g = self.group()
            self.take(")", ")")
            return g
        name = self.take("name", "group").text
        if name == "S3":
            return GS3()
        if name in ("C", "D"):
            self.take("(", "(")
            n = self.integer(1, "group parameter")
            self.take(")", ")")
            return GCyclic(n) if name == "C" else GDihedral(n)
        raise ParseError(f"unknown group {name!r}", t.line, t.col)

    def _ctor_END(self):
        inv = []
        while True:
            t = self.take("name", "C")
            if t.text != "C":
                raise ParseError("expected C(d)", t.line, t.col)
            self.take("(", "(")
            inv.append(self.integer(2, "cyclic order"))
            self.take(")", ")")
            if not self.accept("+"):
                break
        return Endo(tuple(inv))

    def gens(self) -> Gens:
        t = self.peek()
        if t.kind == "name" and t.text == "J":
            self.i += 1
            return RadicalGens()
        self.take("[", "[")
        items = []
        if not self.accept("]"):
            while True:
                t = self.peek()
                if t.kind == "int":
                    items.append(self.integer(0, "element index"))
                elif t.kind == "str":
                    self.i += 1
                    items.append(_unquote(t.text))
                else:
                    raise ParseError("expected an element index or a quoted label", t.line, t.col)
                if self.accept("]"):
                    break
                self.comma()
        return tuple(items)

    def _ctor_IDZ(self):
        inner = self.expr()
        self.comma()
        return Idz(inner, self.gens())

    def _ctor_QUO(self):
        inner = self.expr()
        self.comma()
        return Quo(inner, self.gens())

    def _ctor_TEN(self):
        left = self.expr()
        self.comma()
        return Tensor(left, self.expr())

    def _ctor_POLY(self):
        c = self.integer(2, "modulus")
        self.comma()
        return Poly(c, self.integer(1, "degree bound"))

    def _ctor_ALG(self):
        return AlgFile(_unquote(self.take("str", "quoted path").text))

    def _ctor_MOR(self):
        inner = self.expr()
        self.comma()
        m = self.gens()
        self.comma()
        return Mor(inner, m, self.gens())

    def _ctor_MORITA(self):
        return MoritaFile(_unquote(self.take("str", "quoted path").text))


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


def parse_expr(text: str):
    """Parse a ring expression; raises :class:`ParseError` with line/column."""
    p = _Parser(text)
    e = p.expr()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r} after expression", t.line, t.col)
    return e


def parse_group(text: str):
    p = _Parser(text)
    g = p.group()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r} after group", t.line, t.col)
    return g


# size estimates -----------------------------------------------------------------

def group_order(g) -> int:
    if isinstance(g, GCyclic):
        return g.n
    if isinstance(g, GDihedral):
        return 2 * g.n
    if isinstance(g, GS3):
        return 6
    return prod(group_order(f) for f in g.factors)


def _read_algebra(path: str):
    from .constructions.formats import parse_algebra
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise RingError(f"cannot read algebra file {path!r}: {exc.strerror}") from None
    return parse_algebra(text, f"ALG({_str_lit(path)})")


def estimate_order(e) -> int:
    """Upper bound on the order of ``e`` computed without building anything
    (quotients and ideal-based nodes use their ambient bound)."""
    if isinstance(e, Cyclic):
        return e.n
    if isinstance(e, Field):
        return e.p ** e.k
    if isinstance(e, Product):
        return prod(estimate_order(f) for f in e.factors)
    if isinstance(e, Matrix):
        return estimate_order(e.inner) ** (e.n * e.n)
    if isinstance(e, Triangular):
        return estimate_order(e.inner) ** (e.n * (e.n + 1) // 2)
    if isinstance(e, FormalK):
        return estimate_order(e.inner) ** 4
    if isinstance(e, FormalMS):
        return estimate_order(e.inner) ** (e.n * e.n)
    if isinstance(e, GroupRingE):
        return estimate_order(e.inner) ** group_order(e.group)
    if isinstance(e, Endo):
        return prod(gcd(a, b) for a in e.invariants for b in e.invariants)
    if isinstance(e, Idz):
        return estimate_order(e.inner) ** 2
    if isinstance(e, Quo):
        return estimate_order(e.inner)
    if isinstance(e, Tensor):
        (c, r1), (_, r2) = _alg_shape(e.left), _alg_shape(e.right)
        return c ** (r1 * r2)
    if isinstance(e, (Poly, AlgFile)):
        c, r = _alg_shape(e)
        return c ** r
    if isinstance(e, Mor):
        return estimate_order(e.inner) ** 4
    if isinstance(e, MoritaFile):
        return 0  # only known once the file is read; checked during build
    raise TypeError(e)


def _alg_shape(e) -> tuple[int, int]:
    if isinstance(e, Cyclic):
        return e.n, 1
    if isinstance(e, Field):
        return e.p, e.k
    if isinstance(e, Poly):
        return e.c, e.d
    if isinstance(e, AlgFile):
        pres = _read_algebra(e.path)
        return pres.modulus, pres.rank
    if isinstance(e, Tensor):
        (c, r1), (_, r2) = _alg_shape(e.left), _alg_shape(e.right)
        return c, r1 * r2
    raise RingError(f"{print_expr(e)} is not an algebra presentation (use Z, GF, POLY, ALG or TEN)")


# building -----------------------------------------------------------------------

def build_group(g):
    from .constructions.groups import group_table
    return group_table(_group_spec(g))


def _group_spec(g):
    if isinstance(g, GCyclic):
        return ("C", g.n)
    if isinstance(g, GDihedral):
        return ("D", g.n)
    if isinstance(g, GS3):
        return ("S3",)
    return ("x", [_group_spec(f) for f in g.factors])


def _guard(e, size: int, cap: int):
    if size > cap:
        raise SizeError(print_expr(e), size, cap)


def resolve_gens(ring: FiniteRing, gens: Gens) -> list[int]:
    if isinstance(gens, RadicalGens):
        return [int(i) for i in jacobson_radical(ring).subset.indices]
    out = []
    for g in gens:
        if isinstance(g, str):
            out.append(ring.index_of(g))
        else:
            if not 0 <= g < ring.order:
                raise RingError(f"element index {g} outside {ring.provenance}")
            out.append(int(g))
    return out


def presentation(e, cap: int):
    from .constructions import basic, tensor
    if isinstance(e, Cyclic):
        return tensor.cyclic_presentation(e.n)
    if isinstance(e, Field):
        return tensor.presentation_of_field(basic.galois_field(e.p, e.k, cap=cap))
    if isinstance(e, Poly):
        return tensor.truncated_poly_presentation(e.c, e.d)
    if isinstance(e, AlgFile):
        return _read_algebra(e.path)
    if isinstance(e, Tensor):
        return tensor.tensor_presentation(presentation(e.left, cap), presentation(e.right, cap))
    _alg_shape(e)  # raises with a helpful message
    raise AssertionError


def build(e, cap: int = CONSTRUCTION_CAP) -> FiniteRing:
    """Construct the ring for ``e``.  Each node's order is checked against
    ``cap`` before it is built; the error names the offending subexpression."""
    from .constructions import basic, endo, formats, matrix, morita, tensor
    from .constructions.group_ring import group_ring
    from .constructions.groups import AbelianGroupSpec

    if isinstance(e, (Cyclic, Field, Endo, Poly, AlgFile, Tensor)):
        _guard(e, estimate_order(e), cap)
    if isinstance(e, Cyclic):
        ring = basic.cyclic_ring(e.n)
    elif isinstance(e, Field):
        ring = basic.galois_field(e.p, e.k, cap=cap)
    elif isinstance(e, Product):
        parts = [build(f, cap) for f in e.factors]
        _guard(e, prod(p.order for p in parts), cap)
        ring = direct_product(parts, cap=cap)
    elif isinstance(e, (Matrix, Triangular)):
        inner = build(e.inner, cap)
        cells = e.n * e.n if isinstance(e, Matrix) else e.n * (e.n + 1) // 2
        _guard(e, inner.order ** cells, cap)
        ring = matrix.matrix_ring(e.n, inner, "full" if isinstance(e, Matrix) else "upper_triangular",
                                  cap=cap)
    elif isinstance(e, (FormalK, FormalMS)):
        inner = build(e.inner, cap)
        n = 2 if isinstance(e, FormalK) else e.n
        _guard(e, inner.order ** (n * n), cap)
        s = ("#", e.s.index) if isinstance(e.s, ElemIndex) else e.s
        ring = matrix.formal_matrix_s(inner, s, n, "K" if isinstance(e, FormalK) else "Mn", cap=cap)
    elif isinstance(e, GroupRingE):
        inner = build(e.inner, cap)
        _guard(e, inner.order ** group_order(e.group), cap)
        ring = group_ring(inner, build_group(e.group), cap=cap)
    elif isinstance(e, Endo):
        ring = endo.endo_ring(AbelianGroupSpec(e.invariants), cap=cap)
    elif isinstance(e, (Idz, Quo)):
        inner = build(e.inner, cap)
        ideal = ideal_closure(inner, resolve_gens(inner, e.gens))
        if isinstance(e, Idz):
            _guard(e, inner.order * len(ideal), cap)
            ring = basic.idealization(inner, ideal, cap=cap)
        else:
            from .structure import quotient_ring
            ring = quotient_ring(inner, ideal)
    elif isinstance(e, (Poly, AlgFile)):
        ring = tensor.algebra_ring(presentation(e, cap), cap=cap)
    elif isinstance(e, Tensor):
        pres = presentation(e, cap)
        problem = pres.validate()
        if problem:
            raise RingError(f"{print_expr(e)}: {problem}")
        ring = tensor.TensorRing(presentation(e.left, cap), presentation(e.right, cap))
    elif isinstance(e, Mor):
        inner = build(e.inner, cap)
        m = ideal_closure(inner, resolve_gens(inner, e.m_gens))
        n = ideal_closure(inner, resolve_gens(inner, e.n_gens))
        _guard(e, inner.order ** 2 * len(m) * len(n), cap)
        ring = morita.morita_ring(morita.morita_from_ideals(inner, m.mask, n.mask), cap=cap)
    elif isinstance(e, MoritaFile):
        try:
            text = Path(e.path).read_text()
        except OSError as exc:
            raise RingError(f"cannot read Morita file {e.path!r}: {exc.strerror}") from None
        data = formats.parse_morita(text, lambda s: build(parse_expr(s), cap))
        _guard(e, data.A.order * data.m_order * data.n_order * data.B.order, cap)
        ring = morita.morita_ring(data, cap=cap)
    else:
        raise TypeError(e)
    ring.provenance = print_expr(e)
    return ring


def ring_from_text(text: str, cap: int = CONSTRUCTION_CAP) -> FiniteRing:
    return build(parse_expr(text), cap)
