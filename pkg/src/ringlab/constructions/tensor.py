"""Finite free Z_c-algebras given by structure constants, and their tensor
products over Z_c."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..ring import CapExceeded, CoordinateRing, RingError
from ..structure import CONSTRUCTION_CAP, period_arrays
from .basic import GaloisField


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Basis e_0..e_{r-1} over Z_c with e_i e_j = sum_k constants[i, j, k] e_k."""

    modulus: int
    rank: int
    constants: np.ndarray
    unit: tuple[int, ...]
    name: str = "alg"

    def __post_init__(self):
        c = np.asarray(self.constants, dtype=np.int64) % self.modulus
        if c.shape != (self.rank,) * 3:
            raise RingError(f"structure constants must have shape {(self.rank,) * 3}")
        c.flags.writeable = False
        object.__setattr__(self, "constants", c)
        object.__setattr__(self, "unit", tuple(int(u) % self.modulus for u in self.unit))
        if len(self.unit) != self.rank:
            raise RingError("unit has the wrong number of coordinates")

    @property
    def order(self) -> int:
        return self.modulus ** self.rank

    def validate(self) -> Optional[str]:
        """None if associative and unital, else a description of the failure."""
        c, m = self.constants, self.modulus
        left = np.einsum("ijm,mkn->ijkn", c, c) % m
        right = np.einsum("jkm,imn->ijkn", c, c) % m
        bad = np.argwhere(left != right)
        if bad.size:
            i, j, k, _ = bad[0]
            return f"not associative on basis triple ({i}, {j}, {k})"
        u = np.array(self.unit)
        eye = np.eye(self.rank, dtype=np.int64)
        if not np.array_equal(np.einsum("i,ijk->jk", u, c) % m, eye):
            return "unit is not a left identity"
        if not np.array_equal(np.einsum("j,ijk->ik", u, c) % m, eye):
            return "unit is not a right identity"
        return None


def cyclic_presentation(c: int) -> AlgebraPresentation:
    return AlgebraPresentation(c, 1, np.ones((1, 1, 1), dtype=np.int64), (1,), f"Z({c})")


def truncated_poly_presentation(c: int, d: int) -> AlgebraPresentation:
    """Z_c[t]/(t^d) with basis t^(d-1), ..., t, 1 (highest degree first)."""
    if d < 1:
        raise RingError("POLY(c, d) needs d >= 1")
    const = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            deg = (d - 1 - i) + (d - 1 - j)
            if deg < d:
                const[i, j, d - 1 - deg] = 1
    unit = [0] * (d - 1) + [1]
    return AlgebraPresentation(c, d, const, tuple(unit), f"POLY({c},{d})")


def presentation_of_field(field: GaloisField) -> AlgebraPresentation:
    """GF(p,k) over Z_p in the field's own coordinates."""
    k = field.k
    basis = [field.encode(np.eye(k, dtype=np.int64)[i]) for i in range(k)]
    const = np.array([[field.decode(field.mul(a, b)) for b in basis] for a in basis])
    return AlgebraPresentation(field.p, k, const, field.coords(field.one), field.provenance)


class AlgebraRing(CoordinateRing):
    def __init__(self, pres: AlgebraPresentation, provenance: Optional[str] = None):
        self.pres = pres
        r = pres.rank
        super().__init__([pres.modulus] * r, [0] * r, pres.unit, provenance or pres.name)

    def _cadd(self, x, y):
        return (x + y) % self.pres.modulus

    def _cneg(self, x):
        return (-x) % self.pres.modulus

    def _cmul(self, x, y):
        x, y = np.broadcast_arrays(x, y)
        return np.einsum("...i,...j,ijk->...k", x, y, self.pres.constants) % self.pres.modulus

    def label(self, i):
        return "(" + ",".join(str(v) for v in self.coords(i)) + ")"


def algebra_ring(pres: AlgebraPresentation, cap: int = CONSTRUCTION_CAP) -> AlgebraRing:
    if pres.order > cap:
        raise CapExceeded(pres.name, pres.order, cap)
    problem = pres.validate()
    if problem:
        raise RingError(f"{pres.name}: {problem}")
    return AlgebraRing(pres)


def tensor_presentation(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    if a.modulus != b.modulus:
        raise RingError(f"tensor product needs a common base, got Z_{a.modulus} and Z_{b.modulus}")
    const = np.einsum("ijk,abc->iajbkc", a.constants, b.constants)
    r = a.rank * b.rank
    unit = np.outer(a.unit, b.unit).reshape(-1)
    return AlgebraPresentation(a.modulus, r, const.reshape(r, r, r), tuple(unit),
                               f"TEN({a.name}, {b.name})")


class TensorRing(AlgebraRing):
    def __init__(self, a: AlgebraPresentation, b: AlgebraPresentation):
        super().__init__(tensor_presentation(a, b))
        self.left, self.right = a, b

    def pure_tensor(self, u, v) -> int:
        """Index of u (x) v for coordinate vectors u of A and v of B."""
        return self.encode(np.outer(u, v).reshape(-1) % self.pres.modulus)


def tensor_product_algebra(a: AlgebraPresentation, b: AlgebraPresentation,
                           cap: int = CONSTRUCTION_CAP) -> TensorRing:
    size = a.modulus ** (a.rank * b.rank)
    if size > cap:
        raise CapExceeded(f"TEN({a.name}, {b.name})", size, cap)
    ring = TensorRing(a, b)
    problem = ring.pres.validate()
    if problem:
        raise RingError(f"{ring.provenance}: {problem}")
    return ring


@dataclass(frozen=True)
class ExponentCheck:
    pairs: int
    failures: tuple


def potency_exponents(ring) -> np.ndarray:
    """Least m >= 2 with x^m = x, or 0 if x is not potent."""
    n, k = period_arrays(ring)
    return np.where(n == 1, k + 1, 0)


def combined_exponent_check(ring: TensorRing) -> ExponentCheck:
    """For potent u in A (u^n = u) and v in B (v^m = v), check that u (x) v
    satisfies x^l = x with l = (n-1)(m-1)+1, over all potent pairs."""
    ra, rb = AlgebraRing(ring.left), AlgebraRing(ring.right)
    ea, eb = potency_exponents(ra), potency_exponents(rb)
    failures = []
    pairs = 0
    for u in np.flatnonzero(ea):
        for v in np.flatnonzero(eb):
            pairs += 1
            x = ring.pure_tensor(ra.decode(int(u)), rb.decode(int(v)))
            l = (int(ea[u]) - 1) * (int(eb[v]) - 1) + 1
            if ring.power(x, l) != x:
                failures.append({"u": ra.label(u), "v": rb.label(v), "l": l})
    return ExponentCheck(pairs, tuple(failures))
