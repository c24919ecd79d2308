"""Slow reference implementations used to freeze expected values.

Only the ring operations on single elements are taken from the package;
every property below is recomputed from its definition with plain loops.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd


class Tables:
    """Plain-list Cayley tables of a ring, so that oracles never touch the
    vectorised code paths."""

    def __init__(self, ring):
        n = ring.order
        self.n = n
        self.zero = int(ring.zero)
        self.one = int(ring.one)
        self.add = [[int(ring.add(a, b)) for b in range(n)] for a in range(n)]
        self.mul = [[int(ring.mul(a, b)) for b in range(n)] for a in range(n)]
        self.neg = [self.add[a].index(self.zero) for a in range(n)]

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def power(self, x, e):
        y = self.one
        for _ in range(e):
            y = self.mul[y][x]
        return y


def powers(t: Tables, x: int) -> list[int]:
    """x, x^2, ... up to and including the first repeat."""
    seq = [x]
    while True:
        y = t.mul[seq[-1]][x]
        seq.append(y)
        if y in seq[:-1]:
            return seq


def period(t: Tables, x: int) -> tuple[int, int]:
    """Least n >= 1, then least k >= 1, with x^(n+k) = x^n."""
    seq = powers(t, x)
    last = seq[-1]
    n = seq.index(last) + 1
    return n, len(seq) - n


def is_nilpotent(t: Tables, x: int) -> bool:
    y = x
    for _ in range(t.n + 1):
        if y == t.zero:
            return True
        y = t.mul[y][x]
    return False


def nil_index(t: Tables, x: int) -> int:
    y, k = x, 1
    while y != t.zero:
        y = t.mul[y][x]
        k += 1
        if k > t.n + 1:
            return 0
    return k


def is_unit(t: Tables, x: int) -> bool:
    return any(t.mul[x][y] == t.one and t.mul[y][x] == t.one for y in range(t.n))


def radical(t: Tables) -> set[int]:
    """J = {x : 1 - r x is a unit for every r} (no candidate filtering)."""
    units = {u for u in range(t.n) if is_unit(t, u)}
    return {x for x in range(t.n)
            if all(t.sub(t.one, t.mul[r][x]) in units for r in range(t.n))}


def is_potent(t: Tables, x: int) -> bool:
    return period(t, x)[0] == 1


def uniform_period(t: Tables) -> tuple[int, int]:
    """Least n, then least k, with x^(n+k) = x^n for all x, by direct search."""
    n = 1
    while True:
        for k in range(1, 4 * t.n + 2):
            if all(t.power(x, n + k) == t.power(x, n) for x in range(t.n)):
                return n, k
        n += 1


def nil_clean(t: Tables) -> bool:
    idem = [e for e in range(t.n) if t.mul[e][e] == e]
    nil = [q for q in range(t.n) if is_nilpotent(t, q)]
    sums = {t.add[e][q] for e in idem for q in nil}
    return len(sums) == t.n


def strongly_m_nil_clean(t: Tables, m: int) -> bool:
    """Every x = e + q with e^m = e, q nilpotent and eq = qe."""
    pot = [e for e in range(t.n) if t.power(e, m) == e]
    nil = [q for q in range(t.n) if is_nilpotent(t, q)]
    covered = set()
    for e in pot:
        for q in nil:
            if t.mul[e][q] == t.mul[q][e]:
                covered.add(t.add[e][q])
    return len(covered) == t.n


def characteristic(t: Tables) -> int:
    k, y = 1, t.one
    while y != t.zero:
        y = t.add[y][t.one]
        k += 1
    return k


def is_commutative(t: Tables) -> bool:
    return all(t.mul[a][b] == t.mul[b][a] for a in range(t.n) for b in range(a))


def endo_count(invariants) -> int:
    """|End(Z_d1 + ... + Z_dr)| by counting generator images that respect
    the orders: g_i -> h is allowed iff d_i h = 0."""
    elems = list(product(*[range(d) for d in invariants]))

    def order_divides(h, d):
        return all((d * c) % m == 0 for c, m in zip(h, invariants))

    total = 1
    for d in invariants:
        total *= sum(1 for h in elems if order_divides(h, d))
    return total


def gcd_formula(invariants) -> int:
    out = 1
    for a in invariants:
        for b in invariants:
            out *= gcd(a, b)
    return out


@lru_cache(maxsize=None)
def _cached(text: str):
    from ringlab import ring_from_text
    return Tables(ring_from_text(text))


def tables(text: str) -> Tables:
    return _cached(text)
