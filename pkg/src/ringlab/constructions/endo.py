"""Endomorphism rings of finite abelian groups as constrained integer matrices.

For G = Z_{d_1} + ... + Z_{d_r} an endomorphism sends generator j to
sum_i e_ij g_i, where e_ij in Z_{d_i} must satisfy d_j e_ij = 0, i.e. e_ij is a
multiple of d_i / gcd(d_i, d_j).  Composition is the matrix product with row i
reduced mod d_i.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Optional

import numpy as np
from sympy import primefactors

from ..ring import CapExceeded, CoordinateRing, RingError
from ..structure import CONSTRUCTION_CAP
from .groups import AbelianGroupSpec

#: Largest number of generator-image assignments (|G|^r) the oracle enumerates.
ORACLE_CAP = 256


class EndoRing(CoordinateRing):
    """Coordinates c_ij in Z_{gcd(d_i, d_j)}; the matrix entry is (d_i/g_ij) c_ij."""

    def __init__(self, spec: AbelianGroupSpec):
        self.spec = spec
        d = np.array(spec.invariants, dtype=np.int64)
        r = d.size
        self.r = r
        self.d = d
        self.g = np.gcd(d[:, None], d[None, :])
        self.step = d[:, None] // self.g
        radices = self.g.reshape(-1)
        one = np.eye(r, dtype=np.int64).reshape(-1)
        super().__init__(radices, [0] * (r * r), one, f"END({spec.text()})")

    def entries(self, coords: np.ndarray) -> np.ndarray:
        """Matrix entries (..., r, r) from coordinates (..., r*r)."""
        return coords.reshape(coords.shape[:-1] + (self.r, self.r)) * self.step

    def coords_of(self, entries: np.ndarray) -> np.ndarray:
        e = entries % self.d[:, None]
        return (e // self.step).reshape(entries.shape[:-2] + (self.r * self.r,))

    def _cadd(self, x, y):
        return (x + y) % self.g.reshape(-1)

    def _cneg(self, x):
        return (-x) % self.g.reshape(-1)

    def _cmul(self, x, y):
        return self.coords_of(self.entries(x) @ self.entries(y))

    def matrix(self, x: int) -> list[list[int]]:
        return self.entries(self.decode(x)).tolist()

    def from_matrix(self, rows) -> int:
        e = np.array(rows, dtype=np.int64) % self.d[:, None]
        if np.any(e % self.step):
            raise RingError("matrix entries violate the endomorphism constraints")
        return self.encode(self.coords_of(e))

    def label(self, x):
        return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]"
                               for row in self.matrix(x)) + "]"

    def structural_radical(self):
        """Per prime p: entries between summands of equal nonzero p-adic
        valuation must vanish mod p; everything else is unconstrained."""
        e = self.entries(self.decode(self.elements()))
        out = np.ones(self.order, dtype=bool)
        for p in primefactors(int(np.lcm.reduce(self.d))):
            v = np.array([_val(int(di), p) for di in self.d])
            for i in range(self.r):
                for j in range(self.r):
                    if v[i] == v[j] >= 1:
                        out &= e[:, i, j] % p == 0
        return out


def _val(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def endo_ring(spec: AbelianGroupSpec, cap: int = CONSTRUCTION_CAP) -> EndoRing:
    size = spec.endo_order()
    if size > cap:
        raise CapExceeded(f"END({spec.text()})", size, cap)
    return EndoRing(spec)


# brute-force oracle --------------------------------------------------------

def group_elements(spec: AbelianGroupSpec) -> list[tuple[int, ...]]:
    return list(iproduct(*(range(d) for d in spec.invariants)))


def endomorphism_oracle(spec: AbelianGroupSpec, cap: int = ORACLE_CAP) -> list[tuple]:
    """All endomorphisms as tuples of generator images, found by enumerating
    every assignment of images and keeping those with d_j * image_j = 0."""
    work = spec.order ** len(spec.invariants)
    if work > cap:
        raise CapExceeded(f"endomorphism oracle for {spec.text()}", work, cap)
    d = spec.invariants
    elems = group_elements(spec)
    out = []
    for images in iproduct(elems, repeat=len(d)):
        if all(all((dj * c) % di == 0 for c, di in zip(img, d)) for dj, img in zip(d, images)):
            out.append(images)
    return out


def apply_map(spec: AbelianGroupSpec, images, x: tuple[int, ...]) -> tuple[int, ...]:
    d = spec.invariants
    return tuple(sum(xj * img[i] for xj, img in zip(x, images)) % d[i] for i in range(len(d)))


def compose(spec: AbelianGroupSpec, f, g) -> tuple:
    """f after g, as generator images."""
    return tuple(apply_map(spec, f, gj) for gj in g)


def oracle_isomorphism(ring: EndoRing, cap: int = ORACLE_CAP) -> Optional[str]:
    """Check the matrix model against the oracle: bijection preserving sum and
    composition.  Returns None on success, else a description of the failure."""
    spec = ring.spec
    maps = endomorphism_oracle(spec, cap)
    if len(maps) != ring.order:
        return f"oracle counts {len(maps)} endomorphisms, model has {ring.order}"
    d = spec.invariants
    r = len(d)

    def to_index(images) -> int:
        rows = [[images[j][i] for j in range(r)] for i in range(r)]
        return ring.from_matrix(rows)

    index = [to_index(m) for m in maps]
    if len(set(index)) != len(maps):
        return "matrix model is not injective on the oracle maps"
    pos = {m: k for k, m in enumerate(maps)}
    for a, fa in enumerate(maps):
        for b, fb in enumerate(maps):
            fsum = tuple(tuple((u + v) % di for u, v, di in zip(x, y, d)) for x, y in zip(fa, fb))
            if index[pos[fsum]] != ring.add(index[a], index[b]):
                return f"sum of maps {a}, {b} not preserved"
            if index[pos[compose(spec, fa, fb)]] != ring.mul(index[a], index[b]):
                return f"composition of maps {a}, {b} not preserved"
    return None
