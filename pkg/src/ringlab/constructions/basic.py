"""Cyclic rings, finite fields and idealizations."""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np
from sympy import Poly, isprime, primefactors
from sympy.abc import t as _t

from ..ring import CapExceeded, CoordinateRing, FiniteRing, NotAnIdeal, RingError, Subset
from ..structure import CONSTRUCTION_CAP, is_ideal, jacobson_radical


class CyclicRing(FiniteRing):
    """Integers modulo n; element i is the residue i."""

    def __init__(self, n: int):
        super().__init__(n, 0, 1 % n, f"Z({n})")
        self.modulus = n

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _neg(self, a):
        return (-a) % self.modulus

    def structural_radical(self):
        r = 1
        for p in primefactors(self.modulus):
            r *= p
        return self.elements() % r == 0


def cyclic_ring(n: int) -> CyclicRing:
    if n < 2:
        raise RingError(f"Z(n) needs n >= 2, got {n}")
    return CyclicRing(int(n))


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p.

    Returned as the non-leading coefficients, highest degree first.
    """
    for tail in iproduct(range(p), repeat=k):
        if k > 1 and tail[-1] == 0:
            continue
        if Poly([1, *tail], _t, modulus=p).is_irreducible:
            return tail
    raise RingError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


class GaloisField(CoordinateRing):
    """F_p[t]/(f) with f from :func:`smallest_irreducible`.

    Coordinates are polynomial coefficients, highest degree first, so the index
    of an element is its polynomial evaluated at p.
    """

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.modulus_tail = np.array(smallest_irreducible(p, k), dtype=np.int64)
        one = [0] * (k - 1) + [1]
        super().__init__([p] * k, [0] * k, one, f"GF({p},{k})")

    def _cadd(self, x, y):
        return (x + y) % self.p

    def _cneg(self, x):
        return (-x) % self.p

    def _cmul(self, x, y):
        p, k = self.p, self.k
        lo_x, lo_y = x[..., ::-1], y[..., ::-1]
        full = np.zeros(x.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            full[..., i:i + k] += lo_x[..., i:i + 1] * lo_y
        full %= p
        # t^k = -(tail) in low-first order
        red = (-self.modulus_tail[::-1]) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = full[..., d:d + 1]
            full[..., d - k:d] = (full[..., d - k:d] + c * red) % p
            full[..., d] = 0
        return full[..., :k][..., ::-1]

    def label(self, i):
        c = self.coords(i)
        if self.k == 1:
            return str(c[0])
        terms = []
        for pos, coef in enumerate(c):
            deg = self.k - 1 - pos
            if coef == 0:
                continue
            mon = "" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            if not mon:
                terms.append(str(coef))
            else:
                terms.append(mon if coef == 1 else f"{coef}{mon}")
        return "+".join(terms) if terms else "0"

    def structural_radical(self):
        out = np.zeros(self.order, dtype=bool)
        out[self.zero] = True
        return out


def galois_field(p: int, k: int = 1, cap: int = CONSTRUCTION_CAP) -> GaloisField:
    if not isprime(p):
        raise RingError(f"GF(p,k) needs a prime p, got {p}")
    if k < 1:
        raise RingError(f"GF(p,k) needs k >= 1, got {k}")
    if p ** k > cap:
        raise CapExceeded(f"GF({p},{k})", p ** k, cap)
    return GaloisField(int(p), int(k))


class Idealization(CoordinateRing):
    """R x I with (r1, i1)(r2, i2) = (r1 r2, r1 i2 + i1 r2)."""

    def __init__(self, base: FiniteRing, ideal: Subset, provenance=None):
        self.base = base
        self.members = ideal.indices
        self.ideal = ideal
        self._pos = np.full(base.order, -1, dtype=np.int64)
        self._pos[self.members] = np.arange(self.members.size)
        zpos = int(self._pos[base.zero])
        super().__init__([base.order, self.members.size], [base.zero, zpos], [base.one, zpos],
                         provenance or f"IDZ({base.provenance})")

    def _cadd(self, x, y):
        b, m, pos = self.base, self.members, self._pos
        return np.stack([b.add(x[..., 0], y[..., 0]), pos[b.add(m[x[..., 1]], m[y[..., 1]])]], -1)

    def _cneg(self, x):
        b, m, pos = self.base, self.members, self._pos
        return np.stack([b.neg(x[..., 0]), pos[b.neg(m[x[..., 1]])]], -1)

    def _cmul(self, x, y):
        b, m, pos = self.base, self.members, self._pos
        r = b.mul(x[..., 0], y[..., 0])
        i = b.add(b.mul(x[..., 0], m[y[..., 1]]), b.mul(m[x[..., 1]], y[..., 0]))
        return np.stack([np.asarray(r), pos[np.asarray(i)]], -1)

    def label(self, i):
        r, j = self.coords(i)
        return f"({self.base.label(r)}, {self.base.label(self.members[j])})"

    def structural_radical(self):
        jr = jacobson_radical(self.base).subset.mask
        return jr[self.decode(self.elements())[:, 0]]


def idealization(base: FiniteRing, ideal: Subset, cap: int = CONSTRUCTION_CAP) -> Idealization:
    if ideal.ring is not base or not is_ideal(base, ideal.mask):
        raise NotAnIdeal(f"idealization of {base.provenance} needs a two-sided ideal")
    size = base.order * len(ideal)
    if size > cap:
        raise CapExceeded(f"IDZ({base.provenance})", size, cap)
    return Idealization(base, ideal)
