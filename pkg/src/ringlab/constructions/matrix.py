"""Matrix rings, triangular matrix rings and formal matrix rings twisted by a
central element s."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from ..ring import CapExceeded, CoordinateRing, FiniteRing, RingError
from ..structure import CONSTRUCTION_CAP, center, jacobson_radical


class TwistedMatrixRing(CoordinateRing):
    """n x n matrices over ``base`` supported on ``positions``, with product
    ``c_ij = sum_k w(i,k,j) a_ik b_kj`` for central weights w.

    ``weight(i, k, j)`` returns a base element index or None (meaning one).
    Coordinates are the entries at ``positions`` in row-major order.
    """

    def __init__(self, base: FiniteRing, n: int, positions, weight: Callable, provenance: str,
                 kind: str = "full"):
        self.base = base
        self.n = n
        self.positions = [tuple(p) for p in positions]
        self.kind = kind
        slot = {p: c for c, p in enumerate(self.positions)}
        self._slot = slot
        terms: dict[int, list] = {c: [] for c in range(len(self.positions))}
        for (i, k) in self.positions:
            for (k2, j) in self.positions:
                if k2 == k and (i, j) in slot:
                    terms[slot[(i, j)]].append((slot[(i, k)], slot[(k, j)], weight(i, k, j)))
        self._terms = terms
        zero = [base.zero] * len(self.positions)
        one = [base.one if i == j else base.zero for (i, j) in self.positions]
        super().__init__([base.order] * len(self.positions), zero, one, provenance)

    def _cadd(self, x, y):
        return np.asarray(self.base.add(x, y))

    def _cneg(self, x):
        return np.asarray(self.base.neg(x))

    def _cmul(self, x, y):
        b = self.base
        out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
        for c, terms in self._terms.items():
            acc = np.full(out.shape[:-1], b.zero, dtype=np.int64)
            for ia, ib, w in terms:
                prod_ = np.asarray(b.mul(x[..., ia], y[..., ib]))
                if w is not None:
                    prod_ = np.asarray(b.mul(w, prod_))
                acc = np.asarray(b.add(acc, prod_))
            out[..., c] = acc
        return out

    def entry(self, x: int, i: int, j: int) -> int:
        c = self._slot.get((i, j))
        return self.base.zero if c is None else int(self.decode(x)[c])

    def matrix(self, x: int) -> list[list[int]]:
        return [[self.entry(x, i, j) for j in range(self.n)] for i in range(self.n)]

    def from_matrix(self, rows) -> int:
        coords = []
        for (i, j) in self.positions:
            coords.append(int(rows[i][j]))
        for i in range(self.n):
            for j in range(self.n):
                if (i, j) not in self._slot and rows[i][j] != self.base.zero:
                    raise RingError(f"entry ({i},{j}) must be zero in {self.provenance}")
        return self.encode(coords)

    def label(self, x):
        rows = self.matrix(x)
        return "[" + ", ".join("[" + ", ".join(self.base.label(v) for v in r) + "]" for r in rows) + "]"

    def _off_diagonal_ok(self) -> Optional[np.ndarray]:
        return None

    def structural_radical(self):
        jb = jacobson_radical(self.base).subset.mask
        coords = self.decode(self.elements())
        out = np.ones(self.order, dtype=bool)
        off_ok = self._off_diagonal_ok()
        for c, (i, j) in enumerate(self.positions):
            if i == j or off_ok is None:
                out &= jb[coords[:, c]]
            else:
                out &= off_ok[coords[:, c]]
        return out


class MatrixRing(TwistedMatrixRing):
    def __init__(self, base, n, shape="full"):
        if shape == "full":
            pos = [(i, j) for i in range(n) for j in range(n)]
            prov = f"M({n}, {base.provenance})"
        else:
            pos = [(i, j) for i in range(n) for j in range(n) if i <= j]
            prov = f"T({n}, {base.provenance})"
        super().__init__(base, n, pos, lambda i, k, j: None, prov, shape)

    def _off_diagonal_ok(self):
        if self.kind == "full":
            return None
        # strictly upper entries are unconstrained in the triangular case
        return np.ones(self.base.order, dtype=bool)


class FormalMatrixRing(TwistedMatrixRing):
    """K_s(R) (variant "K", n = 2) or M_n(R;s) (variant "Mn")."""

    def __init__(self, base, s: int, n: int, variant: str, provenance: str):
        self.s = s
        self.variant = variant
        powers = {0: None, 1: s, 2: base.mul(s, s)}
        if variant == "K":
            def weight(i, k, j):
                return s if (i == j and i != k) else None
        else:
            def weight(i, k, j):
                d = 1 + (i == j) - (i == k) - (k == j)
                return powers[d]
        pos = [(i, j) for i in range(n) for j in range(n)]
        super().__init__(base, n, pos, weight, provenance, variant)

    def _off_diagonal_ok(self):
        # off-diagonal entry x is radical iff (twist of an (i,j)(j,i) round trip) * x lies in J
        b = self.base
        t = self.s if self.variant == "K" else b.mul(self.s, self.s)
        jb = jacobson_radical(b).subset.mask
        return jb[np.asarray(b.mul(t, b.elements()))]


def _check_cap(what: str, size: int, cap: int):
    if size > cap:
        raise CapExceeded(what, size, cap)


def matrix_ring(n: int, base: FiniteRing, shape: str = "full",
                cap: int = CONSTRUCTION_CAP) -> MatrixRing:
    if n < 1:
        raise RingError(f"matrix size must be >= 1, got {n}")
    if shape not in ("full", "upper_triangular"):
        raise RingError(f"unknown matrix shape {shape!r}")
    cells = n * n if shape == "full" else n * (n + 1) // 2
    name = ("M" if shape == "full" else "T") + f"({n}, {base.provenance})"
    _check_cap(name, base.order ** cells, cap)
    return MatrixRing(base, n, shape)


def resolve_scalar(base: FiniteRing, s) -> int:
    """Map an integer s to s*1, or accept ``("#", i)`` as an element index."""
    if isinstance(s, tuple) and s and s[0] == "#":
        idx = int(s[1])
        if not 0 <= idx < base.order:
            raise RingError(f"element index {idx} outside {base.provenance}")
        return idx
    return base.scalar(int(s))


def formal_matrix_s(base: FiniteRing, s, n: int = 2, variant: str = "K",
                    cap: int = CONSTRUCTION_CAP) -> FormalMatrixRing:
    if variant not in ("K", "Mn"):
        raise RingError(f"unknown formal matrix variant {variant!r}")
    if variant == "K":
        n = 2
    elif n < 2:
        raise RingError("M_n(R;s) needs n >= 2")
    sval = resolve_scalar(base, s)
    if not center(base).mask[sval]:
        raise RingError(f"s = {base.label(sval)} is not central in {base.provenance}")
    s_text = s if not isinstance(s, tuple) else f"#{s[1]}"
    name = (f"K({base.provenance}, s={s_text})" if variant == "K"
            else f"MS({n}, {base.provenance}, s={s_text})")
    _check_cap(name, base.order ** (n * n), cap)
    return FormalMatrixRing(base, sval, n, variant, name)


def elementwise_equal(r1: FiniteRing, r2: FiniteRing) -> Optional[tuple[int, int]]:
    """None when both rings have identical operation tables on the shared
    carrier, else a witnessing pair of indices."""
    if r1.order != r2.order or r1.zero != r2.zero or r1.one != r2.one:
        return (-1, -1)
    n = r1.order
    elems = np.arange(n, dtype=np.int64)
    rows = max(1, (1 << 20) // n)
    for lo in range(0, n, rows):
        a, b = np.broadcast_arrays(elems[lo:lo + rows, None], elems[None, :])
        for op in ("add", "mul"):
            bad = np.asarray(getattr(r1, op)(a, b)) != np.asarray(getattr(r2, op)(a, b))
            if bad.any():
                i = tuple(np.argwhere(bad)[0])
                return int(a[i]), int(b[i])
    return None
