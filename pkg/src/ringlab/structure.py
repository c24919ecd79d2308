"""Structural invariants of finite rings: characteristic, radicals, ideals,
quotients and direct products."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from sympy import primefactors

from .ring import (CapExceeded, CoordinateRing, FiniteRing, NotAnIdeal, RingError,
                   Subset, TableRing)

#: Brute-force Jacobson radical is refused above this order.
RADICAL_CAP = 4096

#: Default cap on constructed (not necessarily enumerated) carriers.
CONSTRUCTION_CAP = 1 << 16


def memoized(ring: FiniteRing, key, compute: Callable):
    memo = ring._memo
    if key not in memo:
        memo[key] = compute()
    return memo[key]


@dataclass(frozen=True)
class CharData:
    characteristic: int
    pi: tuple[int, ...]


def characteristic(ring: FiniteRing) -> CharData:
    def compute():
        t, x = 1, ring.one
        while x != ring.zero:
            x = ring.add(x, ring.one)
            t += 1
        return CharData(t, tuple(primefactors(t)))
    return memoized(ring, "char", compute)


# additive structure -----------------------------------------------------

def additive_span(ring: FiniteRing, generators: Iterable[int]) -> np.ndarray:
    """Mask of the additive subgroup generated by ``generators``."""
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    members = np.array([ring.zero], dtype=np.int64)
    for g in generators:
        g = int(g)
        if mask[g]:
            continue
        shifted = members
        while True:
            shifted = np.asarray(ring.add(shifted, g), dtype=np.int64)
            if mask[shifted[0]]:
                break
            mask[shifted] = True
        members = np.flatnonzero(mask)
    return mask


def subgroup_generators(ring: FiniteRing, mask: np.ndarray) -> list[int]:
    """A small additive generating set of the subgroup ``mask`` (greedy)."""
    gens: list[int] = []
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    for x in np.flatnonzero(mask):
        if not span[x]:
            gens.append(int(x))
            span = additive_span(ring, gens)
    return gens


def ring_generators(ring: FiniteRing) -> list[int]:
    """Additive generators of the whole carrier (memoised)."""
    return memoized(ring, "ring_gens",
                    lambda: subgroup_generators(ring, np.ones(ring.order, dtype=bool)))


def product_span(ring: FiniteRing, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Additive span of ``{x*y : x in left, y in right}`` for subgroups."""
    lg = subgroup_generators(ring, left)
    rg = np.array(subgroup_generators(ring, right), dtype=np.int64)
    prods: list[int] = []
    for x in lg:
        if rg.size:
            prods.extend(int(v) for v in np.atleast_1d(ring.mul(x, rg)))
    return additive_span(ring, prods)


# elementwise invariants -------------------------------------------------

def nilpotency_indices(ring: FiniteRing) -> np.ndarray:
    """Per-element nilpotency index (min k with x^k = 0), 0 when not nilpotent."""
    def compute():
        x = ring.elements()
        out = np.zeros(ring.order, dtype=np.int64)
        bound = int(np.log2(ring.order)) + 2
        y = x
        for k in range(1, bound + 1):
            hit = (y == ring.zero) & (out == 0)
            out[hit] = k
            y = np.asarray(ring.mul(y, x))
        return out
    return memoized(ring, "nil_index", compute)


def tail_bound(ring: FiniteRing) -> int:
    """Upper bound on the pre-period of any element: floor(log2 |R|) + 1."""
    return int(ring.order).bit_length()


def power_vec(ring: FiniteRing, x: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Elementwise ``x[i] ** exps[i]`` with ``exps >= 0``."""
    x = np.asarray(x, dtype=np.int64)
    result = np.full(x.shape, ring.one, dtype=np.int64)
    base = x.copy()
    e = np.asarray(exps, dtype=np.int64).copy()
    while np.any(e):
        odd = (e & 1) == 1
        if odd.any():
            result[odd] = ring.mul(result[odd], base[odd])
        e >>= 1
        if np.any(e):
            base = np.asarray(ring.mul(base, base))
    return result


def period_arrays(ring: FiniteRing, subset: Optional[np.ndarray] = None):
    """Vectorised ``(n, k)`` of every element: least n, k >= 1 with x^(n+k) = x^n.

    y = x^N with N = :func:`tail_bound` lies on the cycle, so k is the least k
    with y x^k = y; n is then found by a short scan.
    """
    def compute(idx):
        m = idx.size
        big_n = tail_bound(ring)
        y = np.asarray(ring.power(idx, big_n), dtype=np.int64).reshape(m)
        k_out = np.zeros(m, dtype=np.int64)
        live = np.arange(m)
        cur = y.copy()
        k = 0
        while live.size:
            cur = np.asarray(ring.mul(cur, idx[live])).reshape(live.size)
            k += 1
            hit = cur == y[live]
            k_out[live[hit]] = k
            live = live[~hit]
            cur = cur[~hit]
        xk = power_vec(ring, idx, k_out)
        n_out = np.zeros(m, dtype=np.int64)
        a = idx.copy()
        for n in range(1, big_n + 1):
            hit = (n_out == 0) & (np.asarray(ring.mul(a, xk)) == a)
            n_out[hit] = n
            if n_out.all():
                break
            a = np.asarray(ring.mul(a, idx))
        return n_out, k_out

    if subset is not None:
        return compute(np.atleast_1d(np.asarray(subset, dtype=np.int64)))
    return memoized(ring, "periods", lambda: compute(ring.elements()))


def is_unit(ring: FiniteRing, x: int) -> bool:
    """x is a unit iff left multiplication by x is injective (finite carrier)."""
    row = np.asarray(ring.mul(x, ring.elements()))
    return bool(np.unique(row).size == ring.order)


def unit_mask(ring: FiniteRing) -> np.ndarray:
    def compute():
        # x is a unit iff its powers are purely periodic and cycle through one
        idx, per = period_arrays(ring)
        return (idx == 1) & (power_vec(ring, ring.elements(), per) == ring.one)
    return memoized(ring, "units", compute)


@dataclass(frozen=True)
class UnitsIdempotentsNilpotents:
    units: Subset
    idempotents: Subset
    nilpotents: Subset
    nil_index: np.ndarray
    index: int

    def nilpotency_index(self, x: int) -> int:
        return int(self.nil_index[int(x)])


def units_idempotents_nilpotents(ring: FiniteRing) -> UnitsIdempotentsNilpotents:
    def compute():
        elems = ring.elements()
        units = Subset(ring, unit_mask(ring), "units")
        idem = Subset(ring, np.asarray(ring.mul(elems, elems)) == elems, "idempotents")
        ni = nilpotency_indices(ring)
        nil = Subset(ring, ni > 0, "nilpotents")
        return UnitsIdempotentsNilpotents(units, idem, nil, ni, int(ni.max()))
    return memoized(ring, "uin", compute)


def center(ring: FiniteRing) -> Subset:
    """Elements commuting with everything (checked against additive generators)."""
    def compute():
        elems = ring.elements()
        mask = np.ones(ring.order, dtype=bool)
        for g in ring_generators(ring):
            mask &= np.asarray(ring.mul(elems, g)) == np.asarray(ring.mul(g, elems))
        return Subset(ring, mask, "center")
    return memoized(ring, "center", compute)


# ideals ----------------------------------------------------------------

def is_ideal(ring: FiniteRing, mask: np.ndarray) -> bool:
    mask = np.asarray(mask, dtype=bool)
    if not mask[ring.zero]:
        return False
    gens = subgroup_generators(ring, mask)
    if not np.array_equal(additive_span(ring, gens), mask):
        return False
    rg = np.array(ring_generators(ring), dtype=np.int64)
    for g in gens:
        if not mask[np.asarray(ring.mul(rg, g))].all():
            return False
        if not mask[np.asarray(ring.mul(g, rg))].all():
            return False
    return True


def ideal_closure(ring: FiniteRing, generators: Iterable[int]) -> Subset:
    """Least two-sided ideal containing ``generators``."""
    gens = [int(g) for g in generators]
    rg = np.array(ring_generators(ring), dtype=np.int64)
    mask = additive_span(ring, gens)
    frontier = list(gens)
    while frontier:
        new: list[int] = []
        for g in frontier:
            for v in np.concatenate([np.atleast_1d(ring.mul(rg, g)),
                                     np.atleast_1d(ring.mul(g, rg))]):
                if not mask[v]:
                    new.append(int(v))
                    mask = additive_span(ring, gens + new)
        gens += new
        frontier = new
    return Subset(ring, mask, "ideal")


def ideal_power_chain(ring: FiniteRing, mask: np.ndarray, limit: int = 64) -> list[np.ndarray]:
    """[I, I^2, ...] until the zero ideal or stabilisation."""
    chain = [np.asarray(mask, dtype=bool)]
    zero_only = np.zeros(ring.order, dtype=bool)
    zero_only[ring.zero] = True
    while len(chain) < limit:
        last = chain[-1]
        if np.array_equal(last, zero_only):
            break
        nxt = product_span(ring, last, chain[0])
        if np.array_equal(nxt, last):
            break
        chain.append(nxt)
    return chain


def ideal_nilpotency_index(ring: FiniteRing, mask: np.ndarray) -> Optional[int]:
    """Least l with I^l = 0, or None if I is not nilpotent."""
    chain = ideal_power_chain(ring, mask)
    last = chain[-1]
    if last.sum() == 1 and last[ring.zero]:
        return len(chain)
    return None


@dataclass(frozen=True)
class Radical:
    subset: Subset
    nilpotency_index: Optional[int]
    method: str

    def __len__(self) -> int:
        return len(self.subset)

    def __contains__(self, x) -> bool:
        return x in self.subset


def brute_force_radical_mask(ring: FiniteRing, cap: int = RADICAL_CAP) -> np.ndarray:
    """J = {x : 1 - r x is a unit for all r}, candidates restricted to nilpotents.

    Decided candidates settle others: if x is in J so are rx and xr; if x is
    not, neither is ux for a unit u nor x + j for j already known in J.
    """
    if ring.order > cap:
        raise CapExceeded(f"brute-force radical of {ring.provenance}", ring.order, cap)
    units = unit_mask(ring)
    unit_idx = np.flatnonzero(units)
    nil = nilpotency_indices(ring) > 0
    elems = ring.elements()
    state = np.where(nil, 0, -1).astype(np.int8)
    state[ring.zero] = 1
    for x in np.flatnonzero(nil):
        if state[x]:
            continue
        x = int(x)
        vals = np.asarray(ring.sub(ring.one, ring.mul(elems, x)))
        if units[vals].all():
            state[np.asarray(ring.mul(elems, x))] = 1
            state[np.asarray(ring.mul(x, elems))] = 1
        else:
            state[np.asarray(ring.mul(unit_idx, x))] = -1
            state[np.asarray(ring.add(x, np.flatnonzero(state == 1)))] = -1
    return state == 1


def jacobson_radical(ring: FiniteRing, method: str = "auto", cap: int = RADICAL_CAP) -> Radical:
    """J(R) with the nilpotency index of the ideal.

    ``method`` is ``"structural"`` (construction shortcut), ``"brute"`` or
    ``"auto"`` (structural when available).
    """
    if method not in ("auto", "structural", "brute"):
        raise ValueError(f"unknown radical method {method!r}")

    def compute():
        mask = None
        used = "brute"
        if method in ("auto", "structural"):
            mask = ring.structural_radical()
            used = "structural"
            if mask is None and method == "structural":
                raise RingError(f"no structural radical for {ring.provenance}")
        if mask is None:
            mask = brute_force_radical_mask(ring, cap)
            used = "brute"
        return Radical(Subset(ring, mask, "radical"), ideal_nilpotency_index(ring, mask), used)
    return memoized(ring, ("radical", method), compute)


class QuotientRing(TableRing):
    """R / I with cosets represented by their least element index."""

    def __init__(self, parent: FiniteRing, ideal: Subset, provenance: Optional[str] = None):
        n = parent.order
        members = ideal.indices
        proj = np.full(n, -1, dtype=np.int64)
        reps: list[int] = []
        for x in range(n):
            if proj[x] < 0:
                proj[np.asarray(parent.add(x, members))] = len(reps)
                reps.append(x)
        r = np.array(reps, dtype=np.int64)
        add_t = proj[np.asarray(parent.add(r[:, None], r[None, :]))]
        mul_t = proj[np.asarray(parent.mul(r[:, None], r[None, :]))]
        labels = [f"[{parent.label(x)}]" for x in reps]
        super().__init__(add_t, mul_t, int(proj[parent.zero]), int(proj[parent.one]),
                         labels, provenance or f"{parent.provenance}/I")
        self.parent = parent
        self.ideal = ideal
        self.projection = proj
        self.projection.flags.writeable = False
        self.representatives = r

    def structural_radical(self):
        jp = jacobson_radical(self.parent)
        mask = np.zeros(self.order, dtype=bool)
        mask[self.projection[jp.subset.indices]] = True
        return mask


def quotient_ring(ring: FiniteRing, ideal: Subset, provenance: Optional[str] = None) -> QuotientRing:
    """Quotient by a verified two-sided ideal; the projection is ``.projection``."""
    if ideal.ring is not ring:
        raise RingError("ideal belongs to a different ring")
    if not is_ideal(ring, ideal.mask):
        raise NotAnIdeal(f"subset of size {len(ideal)} is not a two-sided ideal of {ring.provenance}")
    return QuotientRing(ring, ideal, provenance)


class ProductRing(CoordinateRing):
    """Direct product with componentwise operations."""

    def __init__(self, factors: Sequence[FiniteRing], provenance: Optional[str] = None):
        self.factors = tuple(factors)
        super().__init__([f.order for f in factors], [f.zero for f in factors],
                         [f.one for f in factors],
                         provenance or " x ".join(f.provenance for f in factors))

    def _cadd(self, x, y):
        return np.stack([np.asarray(f.add(x[..., i], y[..., i])) for i, f in enumerate(self.factors)], -1)

    def _cmul(self, x, y):
        return np.stack([np.asarray(f.mul(x[..., i], y[..., i])) for i, f in enumerate(self.factors)], -1)

    def _cneg(self, x):
        return np.stack([np.asarray(f.neg(x[..., i])) for i, f in enumerate(self.factors)], -1)

    def label(self, i):
        c = self.coords(i)
        return "(" + ", ".join(f.label(v) for f, v in zip(self.factors, c)) + ")"

    def structural_radical(self):
        masks = [jacobson_radical(f).subset.mask for f in self.factors]
        coords = self.decode(self.elements())
        out = np.ones(self.order, dtype=bool)
        for i, m in enumerate(masks):
            out &= m[coords[:, i]]
        return out


def direct_product(rings: Sequence[FiniteRing], cap: int = CONSTRUCTION_CAP) -> ProductRing:
    if not rings:
        raise RingError("direct product of an empty list")
    order = prod(r.order for r in rings)
    if order > cap:
        raise CapExceeded("direct product", order, cap)
    return ProductRing(rings)
