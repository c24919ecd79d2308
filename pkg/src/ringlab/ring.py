"""Finite unital rings over the index carrier ``0..order-1``.

Every ring exposes vectorised ``add``/``mul``/``neg`` that accept python ints
or integer numpy arrays (broadcast together) and return the same shape.
Structured rings compute products from their coordinates; rings small enough
for :data:`TABLE_CAP` memoise full operation tables on first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Optional, Sequence

import numpy as np

#: Largest order for which full add/mul tables are materialised.
TABLE_CAP = 1024

#: Default cap for exhaustive (cubic) axiom validation.
AXIOM_CAP = 512


class RingError(Exception):
    """Base class for construction and usage errors."""


class CapExceeded(RingError):
    """Raised when an operation would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NotAnIdeal(RingError):
    pass


def _as_index(a):
    return np.asarray(a, dtype=np.int64)


def _unwrap(out):
    if isinstance(out, np.ndarray) and out.ndim == 0:
        return int(out)
    if isinstance(out, np.integer):
        return int(out)
    return out


class FiniteRing:
    """A finite associative ring with identity on indices ``0..order-1``.

    Subclasses implement ``_add``, ``_mul`` and ``_neg`` on int64 arrays that
    are already broadcast to a common shape.
    """

    order: int
    zero: int
    one: int
    provenance: str

    def __init__(self, order: int, zero: int, one: int, provenance: str):
        self.order = int(order)
        self.zero = int(zero)
        self.one = int(one)
        self.provenance = provenance
        self._tables: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None
        self._memo: dict = {}

    # structural hooks -------------------------------------------------
    def _add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _neg(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def structural_radical(self) -> Optional[np.ndarray]:
        """Boolean mask of J(R) when the construction knows it, else None."""
        return None

    def label(self, i: int) -> str:
        return str(int(i))

    # public operations ------------------------------------------------
    def add(self, a, b):
        a, b = np.broadcast_arrays(_as_index(a), _as_index(b))
        t = self._get_tables()
        out = t[0][a, b] if t is not None else self._add(a, b)
        return _unwrap(out)

    def mul(self, a, b):
        a, b = np.broadcast_arrays(_as_index(a), _as_index(b))
        t = self._get_tables()
        out = t[1][a, b] if t is not None else self._mul(a, b)
        return _unwrap(out)

    def neg(self, a):
        a = _as_index(a)
        t = self._get_tables()
        out = t[2][a] if t is not None else self._neg(a)
        return _unwrap(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, x, e: int):
        """``x**e`` for ``e >= 1`` (``e == 0`` gives one); vectorised over x."""
        if e < 0:
            raise ValueError("negative exponent")
        x = _as_index(x)
        result = np.full(x.shape, self.one, dtype=np.int64)
        base = x
        while e:
            if e & 1:
                result = _as_index(self.mul(result, base))
            e >>= 1
            if e:
                base = _as_index(self.mul(base, base))
        return _unwrap(result)

    def scalar(self, n: int) -> int:
        """The element ``n * 1``."""
        n = int(n)
        x, acc = (self.one if n >= 0 else self.neg(self.one)), self.zero
        k = abs(n)
        while k:
            if k & 1:
                acc = self.add(acc, x)
            x = self.add(x, x)
            k >>= 1
        return acc

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def index_of(self, label: str) -> int:
        """Inverse of :meth:`label` (linear scan)."""
        cache = self._memo.get("label_index")
        if cache is None:
            cache = {self.label(i): i for i in range(self.order)}
            self._memo["label_index"] = cache
        try:
            return cache[label]
        except KeyError:
            raise RingError(f"no element labelled {label!r} in {self.provenance}") from None

    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Full (add, mul, neg) tables; forces materialisation."""
        t = self._get_tables(force=True)
        assert t is not None
        return t

    def _get_tables(self, force: bool = False):
        if self._tables is None and (force or self.order <= TABLE_CAP):
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        add_t = np.empty((n, n), dtype=np.int64)
        mul_t = np.empty((n, n), dtype=np.int64)
        rows = max(1, (1 << 20) // n)
        for lo in range(0, n, rows):
            a = idx[lo:lo + rows, None]
            a, b = np.broadcast_arrays(a, idx[None, :])
            add_t[lo:lo + rows] = self._add(a, b)
            mul_t[lo:lo + rows] = self._mul(a, b)
        neg_t = np.asarray(self._neg(idx), dtype=np.int64)
        for t in (add_t, mul_t, neg_t):
            t.flags.writeable = False
        return add_t, mul_t, neg_t

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.provenance} order={self.order}>"


class TableRing(FiniteRing):
    """A ring given by explicit operation tables (no validation on build)."""

    def __init__(self, add_table, mul_table, zero: int = 0, one: int = 1,
                 labels: Optional[Sequence[str]] = None, provenance: str = "table"):
        add_table = np.array(add_table, dtype=np.int64)
        mul_table = np.array(mul_table, dtype=np.int64)
        n = add_table.shape[0]
        if add_table.shape != (n, n) or mul_table.shape != (n, n):
            raise RingError("operation tables must be square and of equal size")
        if add_table.min(initial=0) < 0 or add_table.max(initial=0) >= n:
            raise RingError("addition table has entries outside the carrier")
        if mul_table.min(initial=0) < 0 or mul_table.max(initial=0) >= n:
            raise RingError("multiplication table has entries outside the carrier")
        super().__init__(n, zero, one, provenance)
        neg = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(add_table == zero)
        neg[rows[::-1]] = cols[::-1]
        neg[neg < 0] = zero
        self._labels = list(labels) if labels is not None else None
        self._tables = (add_table, mul_table, neg)
        for t in self._tables:
            t.flags.writeable = False

    def label(self, i: int) -> str:
        if self._labels is not None:
            return self._labels[int(i)]
        return str(int(i))


class CoordinateRing(FiniteRing):
    """A ring whose elements are tuples of coordinates in mixed radix.

    The first coordinate is the most significant digit, so index order is the
    lexicographic order of coordinate tuples.
    """

    def __init__(self, radices: Sequence[int], zero_coords, one_coords, provenance: str):
        self.radices = np.asarray(radices, dtype=np.int64)
        w = np.ones(len(radices), dtype=np.int64)
        for i in range(len(radices) - 2, -1, -1):
            w[i] = w[i + 1] * self.radices[i + 1]
        self._weights = w
        order = prod(int(r) for r in radices)
        super().__init__(order, self.encode(zero_coords), self.encode(one_coords), provenance)

    @property
    def ncoords(self) -> int:
        return len(self.radices)

    def decode(self, idx) -> np.ndarray:
        idx = _as_index(idx)
        return (idx[..., None] // self._weights) % self.radices

    def encode(self, coords) -> int | np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        return _unwrap((coords * self._weights).sum(axis=-1))

    def coords(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.decode(i))

    def _add(self, a, b):
        return self.encode(self._cadd(self.decode(a), self.decode(b)))

    def _mul(self, a, b):
        return self.encode(self._cmul(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self._cneg(self.decode(a)))

    def _cadd(self, x, y):
        raise NotImplementedError

    def _cmul(self, x, y):
        raise NotImplementedError

    def _cneg(self, x):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Subset:
    """A subset of a ring's carrier as a membership bitmap."""

    ring: FiniteRing
    mask: np.ndarray
    kind: str = "plain"

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        if m.shape != (self.ring.order,):
            raise RingError("subset mask does not match ring order")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_indices(cls, ring: FiniteRing, indices, kind: str = "plain") -> "Subset":
        m = np.zeros(ring.order, dtype=bool)
        m[np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices,
                     dtype=np.int64)] = True
        return cls(ring, m, kind)

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, i) -> bool:
        return bool(self.mask[int(i)])

    def __iter__(self) -> Iterator[int]:
        return (int(i) for i in self.indices)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subset) and other.ring is self.ring
                and bool(np.array_equal(other.mask, self.mask)))

    def __hash__(self):
        return hash((id(self.ring), self.mask.tobytes()))

    def labels(self) -> list[str]:
        return [self.ring.label(i) for i in self.indices]

    def __repr__(self) -> str:
        shown = ", ".join(self.labels()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"Subset({self.kind}, {{{shown}{more}}})"


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None
    exhaustive: bool = True
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


_PAIR_AXIOMS = ("addition commutative", "zero is additive identity",
                "negation is additive inverse", "one is identity")
_TRIPLE_AXIOMS = ("addition associative", "multiplication associative",
                  "left distributive", "right distributive")


def _pair_violations(ring: FiniteRing, a: np.ndarray, b: np.ndarray):
    yield "addition commutative", ring.add(a, b) != ring.add(b, a)
    yield "zero is additive identity", ring.add(a, ring.zero) != a
    yield "negation is additive inverse", ring.add(a, ring.neg(a)) != ring.zero
    yield "one is identity", (ring.mul(a, ring.one) != a) | (ring.mul(ring.one, a) != a)


def _triple_violations(ring: FiniteRing, a, b, c):
    yield "addition associative", ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c))
    yield "multiplication associative", ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c))
    yield "left distributive", ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c))
    yield "right distributive", ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c))


def _triple_violations_tables(ring: FiniteRing):
    """Triple axioms by direct table gathers, one slab per first element."""
    dt = np.int16 if ring.order < 1 << 15 else np.int32
    add_t, mul_t, _ = (t.astype(dt) for t in ring.tables())
    for x in range(ring.order):
        checks = (
            ("addition associative", add_t[add_t[x]] , add_t[x][add_t]),
            ("multiplication associative", mul_t[mul_t[x]], mul_t[x][mul_t]),
            ("left distributive", mul_t[x][add_t],
             add_t[mul_t[x][:, None], mul_t[x][None, :]]),
            ("right distributive", mul_t[add_t[x]], add_t[mul_t[x][None, :], mul_t]),
        )
        for name, lhs, rhs in checks:
            bad = lhs != rhs
            if bad.any():
                j, k = np.argwhere(bad)[0]
                return name, (x, int(j), int(k))
    return None


def validate_ring_axioms(ring: FiniteRing, cap: int = AXIOM_CAP, samples: int = 20000,
                         seed: int = 0) -> AxiomReport:
    """Check the unital ring axioms; exhaustive up to ``cap``, sampled above.

    Returns the first violated axiom together with a witnessing tuple of
    element indices.
    """
    n = ring.order
    if ring.zero == ring.one:
        return AxiomReport(False, "zero differs from one", (ring.zero,), True, 0)
    elems = ring.elements()
    exhaustive = n <= cap
    checked = 0
    if exhaustive:
        rows = max(1, (1 << 18) // n)
        for lo in range(0, n, rows):
            a = elems[lo:lo + rows, None]
            b = elems[None, :]
            a, b = np.broadcast_arrays(a, b)
            for name, bad in _pair_violations(ring, a, b):
                if np.any(bad):
                    i = np.argwhere(bad)[0]
                    return AxiomReport(False, name, (int(a[tuple(i)]), int(b[tuple(i)])), True, checked)
            checked += a.size
        if ring.order <= TABLE_CAP:
            bad = _triple_violations_tables(ring)
            if bad is not None:
                name, (x, j, k) = bad
                return AxiomReport(False, name, (x, j, k), True, checked)
            return AxiomReport(True, None, None, True, checked + n ** 3)
        for x in range(n):
            b, c = np.broadcast_arrays(elems[:, None], elems[None, :])
            a = np.full(b.shape, x, dtype=np.int64)
            for name, bad in _triple_violations(ring, a, b, c):
                if np.any(bad):
                    j, k = np.argwhere(bad)[0]
                    return AxiomReport(False, name, (x, int(j), int(k)), True, checked)
            checked += b.size
        return AxiomReport(True, None, None, True, checked)
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, n, samples) for _ in range(3))
    for name, bad in _pair_violations(ring, a, b):
        if np.any(bad):
            i = int(np.argmax(bad))
            return AxiomReport(False, name, (int(a[i]), int(b[i])), False, samples)
    for name, bad in _triple_violations(ring, a, b, c):
        if np.any(bad):
            i = int(np.argmax(bad))
            return AxiomReport(False, name, (int(a[i]), int(b[i]), int(c[i])), False, samples)
    return AxiomReport(True, None, None, False, samples)
