"""Finite group tables and finite abelian group specifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Sequence

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from ..ring import RingError


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    identity: int
    mul: np.ndarray
    inverse: np.ndarray
    labels: tuple[str, ...]
    abelian: bool
    name: str = "G"

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def order_multiset(self) -> list[int]:
        return sorted(self.element_order(g) for g in range(self.order))

    def is_normal(self, members: Sequence[int]) -> bool:
        s = set(members)
        for g in range(self.order):
            gi = int(self.inverse[g])
            for h in s:
                if int(self.mul[self.mul[g, h], gi]) not in s:
                    return False
        return True

    def subgroup_generated(self, gens: Sequence[int]) -> list[int]:
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.mul[x, g])
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(found)

    def sylow_subgroups(self, p: int) -> list[list[int]]:
        """All Sylow p-subgroups (brute force over p-element generated subgroups)."""
        n = self.order
        target = 1
        while n % p == 0:
            n //= p
            target *= p
        if target == 1:
            return [[self.identity]]
        pel = [g for g in range(self.order) if _is_power_of(self.element_order(g), p)]
        found: list[list[int]] = []
        seen = set()

        def grow(current: list[int]):
            key = tuple(current)
            if key in seen:
                return
            seen.add(key)
            if len(current) == target:
                found.append(current)
                return
            cs = set(current)
            for g in pel:
                if g not in cs:
                    sub = self.subgroup_generated(current + [g])
                    if len(sub) <= target and all(_is_power_of(self.element_order(x), p) for x in sub):
                        grow(sub)
        grow([self.identity])
        return found


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def validate_group(mul: np.ndarray, identity: int) -> None:
    n = mul.shape[0]
    idx = np.arange(n)
    if not (np.array_equal(mul[identity], idx) and np.array_equal(mul[:, identity], idx)):
        raise RingError("group table: identity law fails")
    for row in mul:
        if np.unique(row).size != n:
            raise RingError("group table: not a Latin square")
    lhs = mul[mul[:, :, None], idx[None, None, :]]
    rhs = mul[idx[:, None, None], mul[None, :, :]]
    if not np.array_equal(lhs, rhs):
        raise RingError("group table: not associative")


def _make(mul, labels, name) -> GroupTable:
    mul = np.asarray(mul, dtype=np.int64)
    validate_group(mul, 0)
    inv = np.argmax(mul == 0, axis=1)
    mul.flags.writeable = False
    inv.flags.writeable = False
    abelian = bool(np.array_equal(mul, mul.T))
    return GroupTable(mul.shape[0], 0, mul, inv, tuple(labels), abelian, name)


def _power_label(sym: str, i: int) -> str:
    return "1" if i == 0 else (sym if i == 1 else f"{sym}^{i}")


def cyclic_group(n: int, sym: str = "g") -> GroupTable:
    if n < 1:
        raise RingError("C(n) needs n >= 1")
    idx = np.arange(n)
    return _make((idx[:, None] + idx[None, :]) % n, [_power_label(sym, i) for i in range(n)], f"C({n})")


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n; element e*n + i is s^e r^i."""
    if n < 1:
        raise RingError("D(n) needs n >= 1")
    size = 2 * n
    mul = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        e1, i1 = divmod(a, n)
        for b in range(size):
            e2, i2 = divmod(b, n)
            # r^i s = s r^-i
            i = (i2 + (i1 if e2 == 0 else -i1)) % n
            mul[a, b] = ((e1 + e2) % 2) * n + i
    labels = [(_power_label("r", i) if e == 0 else ("s" if i == 0 else f"s{_power_label('r', i)}"))
              for e in range(2) for i in range(n)]
    return _make(mul, labels, f"D({n})")


def symmetric_group_3() -> GroupTable:
    perms = sorted(permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x)): apply q first
    mul = [[pos[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return _make(mul, labels, "S3")


def product_group(groups: Sequence[GroupTable]) -> GroupTable:
    if len(groups) == 1:
        return groups[0]
    g, h = groups[0], product_group(groups[1:])
    n, m = g.order, h.order
    a = np.arange(n * m)
    ga, ha = a // m, a % m
    mul = g.mul[ga[:, None], ga[None, :]] * m + h.mul[ha[:, None], ha[None, :]]
    labels = [f"({g.labels[i]},{h.labels[j]})" for i in range(n) for j in range(m)]
    name = " x ".join(x.name for x in groups)
    return _make(mul, labels, name)


def group_table(spec) -> GroupTable:
    """Build from ``("C", n)``, ``("D", n)``, ``("S3",)`` or ``("x", [specs])``."""
    kind = spec[0]
    if kind == "C":
        return cyclic_group(int(spec[1]))
    if kind == "D":
        return dihedral_group(int(spec[1]))
    if kind == "S3":
        return symmetric_group_3()
    if kind == "x":
        return product_group([group_table(s) for s in spec[1]])
    raise RingError(f"unknown group spec {spec!r}")


@dataclass(frozen=True)
class AbelianGroupSpec:
    """G = Z_{d1} + ... + Z_{dr} with each d_i >= 2."""

    invariants: tuple[int, ...]
    primary: dict = field(init=False, compare=False, hash=False)

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        if not inv or any(d < 2 for d in inv):
            raise RingError(f"abelian group invariants must be >= 2, got {inv}")
        object.__setattr__(self, "invariants", inv)
        prim: dict[int, dict[int, int]] = {}
        for d in inv:
            for p, k in factorint(d).items():
                prim.setdefault(p, {})
                prim[p][k] = prim[p].get(k, 0) + 1
        object.__setattr__(self, "primary", {p: sorted(v.items()) for p, v in sorted(prim.items())})

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def endo_order(self) -> int:
        out = 1
        for a in self.invariants:
            for b in self.invariants:
                out *= gcd(a, b)
        return out

    def p_part(self, p: int) -> "AbelianGroupSpec | None":
        parts = [p ** k for k, n in self.primary.get(p, []) for _ in range(n)]
        return AbelianGroupSpec(tuple(parts)) if parts else None

    def multiplicities(self, p: int) -> list[int]:
        """The n_j of the p-primary part (one per distinct exponent k_j)."""
        return [n for _, n in self.primary.get(p, [])]

    def text(self) -> str:
        return "+".join(f"C({d})" for d in self.invariants)


def abelian_p_groups(p: int, max_order: int) -> list[AbelianGroupSpec]:
    """All abelian p-groups of order p^a <= max_order, a >= 1, as partitions."""
    out = []
    a = 1
    while p ** a <= max_order:
        for part in partitions(a):
            exps = sorted((k for k, c in part.items() for _ in range(c)), reverse=True)
            out.append(AbelianGroupSpec(tuple(p ** k for k in exps)))
        a += 1
    return out
