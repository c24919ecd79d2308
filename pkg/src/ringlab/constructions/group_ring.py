"""Group rings RG of finite groups over finite rings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from sympy.ntheory.modular import crt

from ..ring import CapExceeded, CoordinateRing, FiniteRing, Subset
from ..structure import (CONSTRUCTION_CAP, characteristic, ideal_closure, ideal_nilpotency_index,
                         jacobson_radical, memoized, nilpotency_indices)
from .groups import GroupTable


@dataclass(frozen=True)
class AugmentationData:
    """The augmentation ideal and its nilpotency behaviour."""

    delta: Subset
    nil: bool
    element_index: Optional[int]
    ideal_index: Optional[int]


class GroupRing(CoordinateRing):
    """Functions G -> R; coordinate g is the coefficient of group element g."""

    def __init__(self, base: FiniteRing, group: GroupTable, provenance: Optional[str] = None):
        self.base = base
        self.group = group
        n = group.order
        super().__init__([base.order] * n, [base.zero] * n,
                         [base.one] + [base.zero] * (n - 1),
                         provenance or f"GR({base.provenance}, {group.name})")
        self._pairs = [[(g, h) for g in range(n) for h in range(n) if group.mul[g, h] == t]
                       for t in range(n)]

    def _cadd(self, x, y):
        return np.asarray(self.base.add(x, y))

    def _cneg(self, x):
        return np.asarray(self.base.neg(x))

    def _cmul(self, x, y):
        b = self.base
        out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
        for t, pairs in enumerate(self._pairs):
            acc = np.full(out.shape[:-1], b.zero, dtype=np.int64)
            for g, h in pairs:
                acc = np.asarray(b.add(acc, b.mul(x[..., g], y[..., h])))
            out[..., t] = acc
        return out

    def group_element(self, g: int) -> int:
        coords = [self.base.zero] * self.group.order
        coords[g] = self.base.one
        return self.encode(coords)

    def embed(self, r: int) -> int:
        coords = [self.base.zero] * self.group.order
        coords[0] = r
        return self.encode(coords)

    def label(self, x):
        terms = []
        for g, c in enumerate(self.coords(x)):
            if c == self.base.zero:
                continue
            cl, gl = self.base.label(c), self.group.labels[g]
            if gl == "1":
                terms.append(cl)
            elif c == self.base.one:
                terms.append(gl)
            else:
                terms.append(f"({cl}){gl}" if "+" in cl else f"{cl}{gl}")
        return "+".join(terms) if terms else "0"

    def augmentation_map(self) -> np.ndarray:
        """Image in the base ring of every element (sum of coefficients)."""
        def compute():
            coords = self.decode(self.elements())
            acc = coords[:, 0]
            for g in range(1, self.group.order):
                acc = np.asarray(self.base.add(acc, coords[:, g]))
            return acc
        return memoized(self, "augmentation_map", compute)

    def augmentation(self) -> AugmentationData:
        def compute():
            mask = self.augmentation_map() == self.base.zero
            ni = nilpotency_indices(self)[mask]
            nil = bool((ni > 0).all())
            return AugmentationData(Subset(self, mask, "ideal"), nil,
                                    int(ni.max()) if nil else None,
                                    ideal_nilpotency_index(self, mask))
        return memoized(self, "augmentation", compute)

    def structural_radical(self):
        """J(R)G plus e_p * w(P) over primes p of the characteristic with a normal
        Sylow p-subgroup P; None (fall back to brute force) when some relevant
        Sylow subgroup is not normal."""
        gens = [self.embed(int(j)) for j in jacobson_radical(self.base).subset.indices]
        char = characteristic(self.base)
        c = char.characteristic
        for p in char.pi:
            if self.group.order % p:
                continue
            sylows = self.group.sylow_subgroups(p)
            if len(sylows) != 1:
                return None
            pa = 1
            while c % (pa * p) == 0:
                pa *= p
            e = int(crt([pa, c // pa], [1, 0])[0]) if c // pa > 1 else 1
            e_elem = self.base.scalar(e)
            for h in sylows[0]:
                coords = [self.base.zero] * self.group.order
                coords[0] = e_elem
                coords[h] = self.base.add(coords[h], self.base.neg(e_elem))
                gens.append(self.encode(coords))
        return ideal_closure(self, gens).mask


def group_ring(base: FiniteRing, group: GroupTable, cap: int = CONSTRUCTION_CAP) -> GroupRing:
    size = base.order ** group.order
    if size > cap:
        raise CapExceeded(f"GR({base.provenance}, {group.name})", size, cap)
    return GroupRing(base, group)
