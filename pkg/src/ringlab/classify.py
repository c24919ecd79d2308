"""Element and ring predicates, periods, and constructive decompositions.

Every negative verdict carries a concrete counterwitness; decompositions are
searched in index order of the candidate potent part so results are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Optional

import numpy as np

from .ring import CapExceeded, FiniteRing, RingError, Subset
from .structure import (center, characteristic, is_ideal, jacobson_radical, memoized,
                        nilpotency_indices, period_arrays, quotient_ring,
                        units_idempotents_nilpotents)

#: Largest order classified exhaustively.
CLASSIFY_CAP = 10_000

TRIVIAL_FLAGS = ("periodic", "weakly_periodic", "pi_UU", "semi_clean", "strongly_pi_regular")

TRIVIAL_REASON = {
    "periodic": "finite carrier: the powers of every element eventually cycle",
    "weakly_periodic": "finite carrier: the index/period split writes every element as a potent plus a nilpotent",
    "pi_UU": "finite carrier: every unit has finite order, so u^i = 1 lies in 1 + Nil",
    "semi_clean": "finite carrier: finite rings are clean, hence semi-clean",
    "strongly_pi_regular": "finite carrier: descending chains of principal one-sided ideals stabilise",
}

FLAG_ORDER = ("potent", "boolean", "m_potent_uniform", "nil_clean", "strongly_nil_clean",
              "m_nil_clean", "strongly_m_nil_clean", "weakly_nil_clean", "weakly_periodic",
              "periodic", "UU", "pi_UU", "abelian", "local", "NI", "two_primal", "quasi_duo",
              "reduced", "commutative", "semi_clean", "strongly_pi_regular")


def element_ref(ring: FiniteRing, x) -> dict:
    return {"index": int(x), "label": ring.label(int(x))}


# periods ------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodData:
    n: int
    k: int

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k}


def element_period(ring: FiniteRing, x: int) -> PeriodData:
    """Least (n, k) with x^(n+k) = x^n, by iterating powers until one repeats."""
    seen: dict[int, int] = {}
    y, e = int(x), 1
    while y not in seen:
        seen[y] = e
        y = int(ring.mul(y, x))
        e += 1
    n = seen[y]
    return PeriodData(n, e - n)


def period_table(ring: FiniteRing) -> tuple[np.ndarray, np.ndarray]:
    """(n, k) for every element, vectorised."""
    return period_arrays(ring)


def uniform_period(ring: FiniteRing) -> PeriodData:
    """Least n, then least k, with x^(n+k) = x^n for every x: (max n, lcm k)."""
    n, k = period_table(ring)
    return PeriodData(int(n.max()), int(lcm(*(int(v) for v in np.unique(k)))))


def potency_exponents(ring: FiniteRing) -> np.ndarray:
    """Least m >= 2 with x^m = x per element, 0 where x is not potent."""
    n, k = period_table(ring)
    return np.where(n == 1, k + 1, 0)


def m_potent_mask(ring: FiniteRing, m: int) -> np.ndarray:
    """x^m = x, i.e. x is potent with period dividing m - 1."""
    if m < 2:
        raise RingError(f"m must be >= 2, got {m}")
    n, k = period_table(ring)
    return (n == 1) & ((m - 1) % k == 0)


# decompositions -------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """x = a + b with a nilpotent and b potent (``m_potency``: least m >= 2 with b^m = b)."""

    x: int
    a: int
    b: int
    m_potency: int
    nil_index: int
    commute: bool
    annihilate: bool

    def certify(self, ring: FiniteRing) -> bool:
        return (ring.add(self.a, self.b) == self.x
                and ring.power(self.b, self.m_potency) == self.b
                and ring.power(self.a, self.nil_index) == ring.zero
                and (ring.mul(self.a, self.b) == ring.mul(self.b, self.a)) == self.commute
                and (ring.mul(self.a, self.b) == ring.zero == ring.mul(self.b, self.a)) == self.annihilate)

    def as_dict(self, ring: FiniteRing) -> dict:
        return {"x": element_ref(ring, self.x), "a": element_ref(ring, self.a),
                "b": element_ref(ring, self.b), "m_potency": self.m_potency,
                "nil_index": self.nil_index, "commute": self.commute,
                "annihilate": self.annihilate}


def _make_decomposition(ring: FiniteRing, x: int, a: int, b: int) -> Decomposition:
    ab, ba = ring.mul(a, b), ring.mul(b, a)
    m = int(potency_exponents(ring)[b])
    return Decomposition(int(x), int(a), int(b), m, int(nilpotency_indices(ring)[a]),
                         ab == ba, ab == ring.zero and ba == ring.zero)


def potent_nilpotent_decompose(ring: FiniteRing, x: int) -> Decomposition:
    """With (n, k) the period of x and N the least multiple of k that is >= n,
    b = x^(N+1) satisfies b^(k+1) = b and a = x - b is nilpotent with a^n = 0,
    ab = ba = 0."""
    p = element_period(ring, x)
    big_n = -(-p.n // p.k) * p.k
    b = int(ring.power(int(x), big_n + 1))
    a = int(ring.sub(int(x), b))
    return _make_decomposition(ring, x, a, b)


def weakly_periodic_witness(ring: FiniteRing) -> dict[int, tuple[int, int, int]]:
    """x -> (potent p, nilpotent q, least m >= 2 with p^m = p) with x = p + q."""
    out = {}
    for x in range(ring.order):
        d = potent_nilpotent_decompose(ring, x)
        out[x] = (d.b, d.a, d.m_potency)
    return out


# remark on uniform exponents -------------------------------------------------

@dataclass(frozen=True)
class RemarkReport:
    period: PeriodData
    characteristic: int
    part1_applies: bool
    part1_holds: Optional[bool]
    part2_applies: bool
    part2_holds: Optional[bool]

    @property
    def ok(self) -> bool:
        return self.part1_holds is not False and self.part2_holds is not False


def check_remark_2_2(ring: FiniteRing) -> RemarkReport:
    """(1) x^(n+2) = x^n for all x forces char | 2^n * 3 (applies when k | 2).
    (2) valid exponents m > n of opposite parity exist iff k is odd, and then
    every element is potent."""
    p = uniform_period(ring)
    c = characteristic(ring).characteristic
    p1 = 2 % p.k == 0
    h1 = ((2 ** p.n) * 3) % c == 0 if p1 else None
    p2 = p.k % 2 == 1
    h2 = bool((period_table(ring)[0] == 1).all()) if p2 else None
    return RemarkReport(p, c, p1, h1, p2, h2)


# element classification ------------------------------------------------------

def classify_element(ring: FiniteRing, x: int) -> dict:
    x = int(x)
    if not 0 <= x < ring.order:
        raise RingError(f"element index {x} outside 0..{ring.order - 1}")
    uin = units_idempotents_nilpotents(ring)
    per = element_period(ring, x)
    m = per.k + 1 if per.n == 1 else None
    unit = x in uin.units
    unit_order = per.k if unit else None
    return {
        "element": element_ref(ring, x),
        "nilpotent": x in uin.nilpotents,
        "nil_index": uin.nilpotency_index(x) or None,
        "idempotent": ring.mul(x, x) == x,
        "tripotent": ring.power(x, 3) == x,
        "m_potent": m,
        "unit": unit,
        "unit_order": unit_order,
        "period": per.as_dict(),
        "in_J": x in jacobson_radical(ring).subset,
        "central": x in center(ring),
    }


# clean-type searches -----------------------------------------------------------

@dataclass(frozen=True)
class CleanResult:
    """Outcome of a decomposition search with a witness map or a counterwitness."""

    holds: bool
    witness: dict = field(default_factory=dict)  # x -> (potent part, nilpotent part)
    counterwitness: Optional[int] = None

    def verify(self, ring: FiniteRing, m: Optional[int], commuting: bool) -> bool:
        """Re-multiply every witness pair."""
        nil = nilpotency_indices(ring) > 0
        for x, (b, a) in self.witness.items():
            if ring.add(b, a) != x or not nil[a]:
                return False
            if m is not None and ring.power(b, m) != b:
                return False
            if commuting and ring.mul(a, b) != ring.mul(b, a):
                return False
        return True


def _pick_counterwitness(ring: FiniteRing, missing: np.ndarray) -> int:
    """Prefer a unit among failing elements (units are the usual obstruction),
    else the least failing index."""
    units = units_idempotents_nilpotents(ring).units.mask
    failing_units = np.flatnonzero(missing & units)
    if failing_units.size:
        return int(failing_units[0])
    return int(np.flatnonzero(missing)[0])


def _sum_cover(ring: FiniteRing, parts: np.ndarray) -> CleanResult:
    """Cover x = b + a with b from ``parts`` (in index order) and a nilpotent."""
    nil = np.flatnonzero(nilpotency_indices(ring) > 0)
    owner = np.full(ring.order, -1, dtype=np.int64)
    nil_of = np.full(ring.order, -1, dtype=np.int64)
    for b in parts:
        xs = np.asarray(ring.add(int(b), nil))
        fresh = owner[xs] < 0
        owner[xs[fresh]] = b
        nil_of[xs[fresh]] = nil[fresh]
    missing = owner < 0
    if missing.any():
        return CleanResult(False, {}, _pick_counterwitness(ring, missing))
    return CleanResult(True, {int(x): (int(owner[x]), int(nil_of[x])) for x in range(ring.order)})


def nil_clean(ring: FiniteRing) -> CleanResult:
    return _sum_cover(ring, units_idempotents_nilpotents(ring).idempotents.indices)


def m_nil_clean(ring: FiniteRing, m: int) -> CleanResult:
    return _sum_cover(ring, np.flatnonzero(m_potent_mask(ring, m)))


def weakly_nil_clean(ring: FiniteRing) -> CleanResult:
    """x = q + e or x = q - e with e idempotent and q nilpotent."""
    e = units_idempotents_nilpotents(ring).idempotents.indices
    parts = np.unique(np.concatenate([e, np.asarray(ring.neg(e))]))
    return _sum_cover(ring, parts)


def _commuting_decomposition(ring: FiniteRing, x: int, parts: np.ndarray,
                             nil: np.ndarray) -> Optional[tuple[int, int]]:
    if parts.size == 0:
        return None
    a = np.asarray(ring.sub(x, parts))
    ok = nil[a] & (np.asarray(ring.mul(x, parts)) == np.asarray(ring.mul(parts, x)))
    hit = np.flatnonzero(ok)
    return (int(parts[hit[0]]), int(a[hit[0]])) if hit.size else None


def strongly_m_nil_clean(ring: FiniteRing, m: int) -> CleanResult:
    """Every x is b + a with b^m = b, a nilpotent and ab = ba.

    Commuting b and a force x^m - x to be nilpotent, so elements failing that
    test are counterwitness candidates; each is confirmed by an explicit search
    before being reported.  Otherwise the witness map is built by sweeping b in
    index order over the m-potents.
    """
    def compute():
        nil = nilpotency_indices(ring) > 0
        parts = np.flatnonzero(m_potent_mask(ring, m))
        elems = ring.elements()
        drift = np.asarray(ring.sub(ring.power(elems, m), elems))
        suspects = np.flatnonzero(~nil[drift])
        if suspects.size:
            x = int(suspects[0])
            if _commuting_decomposition(ring, x, parts, nil) is not None:
                raise RingError("commuting decomposition with x^m - x not nilpotent")
            return CleanResult(False, {}, x)
        nil_idx = np.flatnonzero(nil)
        owner = np.full(ring.order, -1, dtype=np.int64)
        nil_of = np.full(ring.order, -1, dtype=np.int64)
        for b in parts:
            comm = np.asarray(ring.mul(int(b), nil_idx)) == np.asarray(ring.mul(nil_idx, int(b)))
            qs = nil_idx[comm]
            xs = np.asarray(ring.add(int(b), qs))
            fresh = owner[xs] < 0
            owner[xs[fresh]] = b
            nil_of[xs[fresh]] = qs[fresh]
        missing = owner < 0
        if missing.any():
            return CleanResult(False, {}, _pick_counterwitness(ring, missing))
        return CleanResult(True, {int(x): (int(owner[x]), int(nil_of[x])) for x in range(ring.order)})
    if m < 2:
        raise RingError(f"m must be >= 2, got {m}")
    return memoized(ring, ("strongly_m_nil_clean", m), compute)


# lemma-style exponent bound --------------------------------------------------------

@dataclass(frozen=True)
class QBound:
    q: int
    field_orders: tuple[int, ...]
    n: int
    checked: int
    violations: tuple[int, ...]

    @property
    def verified(self) -> bool:
        return not self.violations


def abelian_failure(ring: FiniteRing) -> Optional[tuple[int, int]]:
    """(e, y) with e idempotent and ey != ye, or None if R is abelian."""
    elems = ring.elements()
    for e in units_idempotents_nilpotents(ring).idempotents:
        bad = np.asarray(ring.mul(e, elems)) != np.asarray(ring.mul(elems, e))
        if bad.any():
            return e, int(np.argmax(bad))
    return None


def commutative_failure(ring: FiniteRing) -> Optional[tuple[int, int]]:
    from .structure import ring_generators
    elems = ring.elements()
    for g in ring_generators(ring):
        bad = np.asarray(ring.mul(g, elems)) != np.asarray(ring.mul(elems, g))
        if bad.any():
            return g, int(np.argmax(bad))
    return None


def residue_field_orders(ring: FiniteRing) -> tuple[int, ...]:
    """Orders of the fields in R/J = F_1 x ... x F_t (R/J commutative)."""
    quot = quotient_ring(ring, jacobson_radical(ring).subset)
    if commutative_failure(quot) is not None:
        raise RingError(f"R/J is not commutative for {ring.provenance}")
    idem = [e for e in units_idempotents_nilpotents(quot).idempotents if e != quot.zero]
    orders = []
    for e in idem:
        below = [f for f in idem if f != e and quot.mul(f, e) == f]
        if not below:
            orders.append(int(np.unique(np.asarray(quot.mul(e, quot.elements()))).size))
    return tuple(sorted(orders))


def q_bound(ring: FiniteRing, n: int, cap: int = 1 << 16) -> QBound:
    """q = lcm over residue fields F and 1 <= i <= n of (|F|^i - 1), plus one,
    with an exhaustive check that A^q - A is nilpotent for all A in M_n(R)."""
    from .constructions.matrix import matrix_ring
    if n < 1:
        raise RingError("matrix size must be >= 1")
    fail = abelian_failure(ring)
    if fail is not None:
        raise RingError(f"{ring.provenance} is not abelian: idempotent {ring.label(fail[0])} "
                        f"does not commute with {ring.label(fail[1])}")
    fields = residue_field_orders(ring)
    q = lcm(*[f ** i - 1 for f in fields for i in range(1, n + 1)]) + 1
    size = ring.order ** (n * n)
    if size > cap:
        raise CapExceeded(f"M({n}, {ring.provenance})", size, cap)
    mat = matrix_ring(n, ring, cap=cap)
    elems = mat.elements()
    diff = np.asarray(mat.sub(mat.power(elems, q), elems))
    nil = nilpotency_indices(mat) > 0
    bad = np.flatnonzero(~nil[diff])
    return QBound(q, fields, n, mat.order, tuple(int(v) for v in bad))


# sums of tripotents/idempotents and potents in matrix rings -------------------------

@dataclass(frozen=True)
class SumDecomposition:
    x: int
    t: Optional[int]
    p: Optional[int]

    @property
    def found(self) -> bool:
        return self.t is not None


def is_potent_ring(ring: FiniteRing) -> bool:
    return bool((period_table(ring)[0] == 1).all())


def tripotent_potent_table(matrix_ring_, mode: str = "tripotent") -> dict[int, SumDecomposition]:
    """For every A: the first t (t^3 = t, or t^2 = t in idempotent mode) in
    index order with A - t potent."""
    base = matrix_ring_.base
    if not is_potent_ring(base):
        raise RingError(f"base ring {base.provenance} is not potent")
    if mode == "idempotent":
        if not units_idempotents_nilpotents(base).units.mask[base.scalar(3)]:
            raise RingError(f"3 is not a unit in {base.provenance}")
    elif mode != "tripotent":
        raise RingError(f"unknown mode {mode!r}")
    ring = matrix_ring_
    elems = ring.elements()
    potent = period_table(ring)[0] == 1
    m = 2 if mode == "idempotent" else 3
    cands = np.flatnonzero(np.asarray(ring.power(elems, m)) == elems)
    t_of = np.full(ring.order, -1, dtype=np.int64)
    for t in cands:
        live = np.flatnonzero(t_of < 0)
        if not live.size:
            break
        ok = potent[np.asarray(ring.sub(live, int(t)))]
        t_of[live[ok]] = t
    out = {}
    for x in range(ring.order):
        t = int(t_of[x])
        out[x] = SumDecomposition(x, t if t >= 0 else None,
                                  int(ring.sub(x, t)) if t >= 0 else None)
    return out


def tripotent_potent_decompose(matrix_ring_, A: int, mode: str = "tripotent") -> SumDecomposition:
    return tripotent_potent_table(matrix_ring_, mode)[int(A)]


# lifting potents modulo nil ideals ------------------------------------------------

def lift_potent_mod_nil(ring: FiniteRing, ideal: Subset, e_bar: int,
                        fast_idempotent: bool = False):
    """A potent f in the coset of ``e_bar`` (an index of R/I).

    The coset is scanned in index order.  With ``fast_idempotent`` an idempotent
    class is lifted by iterating e -> 3e^2 - 2e^3 instead.
    Returns (f, least m >= 2 with f^m = f) or None if no lift exists.
    """
    nil = nilpotency_indices(ring) > 0
    if not nil[ideal.indices].all():
        raise RingError("ideal is not nil")
    quot = quotient_ring(ring, ideal)
    if not 0 <= e_bar < quot.order:
        raise RingError(f"class index {e_bar} outside the quotient")
    if element_period(quot, e_bar).n != 1:
        raise RingError(f"class {quot.label(e_bar)} is not potent")
    coset = np.flatnonzero(quot.projection == e_bar)
    if fast_idempotent and quot.mul(e_bar, e_bar) == e_bar:
        e = int(coset[0])
        for _ in range(ring.order.bit_length() + 2):
            if ring.mul(e, e) == e:
                return e, 2
            e2 = ring.mul(e, e)
            e = int(ring.sub(ring.mul(ring.scalar(3), e2), ring.mul(ring.scalar(2), ring.mul(e2, e))))
    pot = potency_exponents(ring)
    for f in coset:
        if pot[f]:
            return int(f), int(pot[f])
    return None


# ring profile -----------------------------------------------------------------------

@dataclass(frozen=True)
class FlagEntry:
    status: str  # "true" | "false" | "trivially-true-finite" | "skipped"
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def as_dict(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass(frozen=True)
class RingProfile:
    ring: str
    order: int
    m: int
    flags: dict

    def status(self, name: str) -> str:
        return self.flags[name].status

    def holds(self, name: str) -> bool:
        return self.flags[name].status in ("true", "trivially-true-finite")


def _entry(ok: bool, witness=None) -> FlagEntry:
    return FlagEntry("true") if ok else FlagEntry("false", witness)


def _first_bad(ring, bad: np.ndarray, **extra) -> FlagEntry:
    idx = np.flatnonzero(bad)
    return _entry(not idx.size, _elem_witness(ring, idx[0], **extra) if idx.size else None)


def _elem_witness(ring, x, **extra):
    w = {"element": element_ref(ring, x)}
    w.update(extra)
    return w


def _pair_witness(ring, x, y):
    return {"elements": [element_ref(ring, x), element_ref(ring, y)]}


def classify_ring(ring: FiniteRing, m: int = 3, cap: int = CLASSIFY_CAP) -> RingProfile:
    """Evaluate every profile flag; trivially-true flags short-circuit with a
    reason, and every false flag carries a counterwitness."""
    flags: dict[str, FlagEntry] = {}
    for name in TRIVIAL_FLAGS:
        flags[name] = FlagEntry("trivially-true-finite", None, TRIVIAL_REASON[name])
    if ring.order > cap:
        reason = f"order {ring.order} exceeds classification cap {cap}"
        for name in FLAG_ORDER:
            flags.setdefault(name, FlagEntry("skipped", None, reason))
        return RingProfile(ring.provenance, ring.order, m, {k: flags[k] for k in FLAG_ORDER})

    elems = ring.elements()
    uin = units_idempotents_nilpotents(ring)
    nil = uin.nilpotents.mask
    jr = jacobson_radical(ring).subset.mask
    n_per, _ = period_table(ring)

    flags["potent"] = _first_bad(ring, n_per != 1)
    flags["boolean"] = _first_bad(ring, np.asarray(ring.mul(elems, elems)) != elems)
    flags["m_potent_uniform"] = _first_bad(ring, np.asarray(ring.power(elems, m)) != elems, m=m)

    for name, res in (("nil_clean", nil_clean(ring)),
                      ("strongly_nil_clean", strongly_m_nil_clean(ring, 2)),
                      ("m_nil_clean", m_nil_clean(ring, m)),
                      ("strongly_m_nil_clean", strongly_m_nil_clean(ring, m)),
                      ("weakly_nil_clean", weakly_nil_clean(ring))):
        flags[name] = _entry(res.holds, None if res.holds else _elem_witness(ring, res.counterwitness))

    one_plus_nil = np.zeros(ring.order, dtype=bool)
    one_plus_nil[np.asarray(ring.add(ring.one, np.flatnonzero(nil)))] = True
    flags["UU"] = _first_bad(ring, uin.units.mask & ~one_plus_nil)

    fail = abelian_failure(ring)
    flags["abelian"] = _entry(fail is None, fail and _pair_witness(ring, *fail))

    flags["local"] = _first_bad(ring, ~uin.units.mask & ~jr)

    outside = np.flatnonzero(nil & ~jr)
    ni = is_ideal(ring, nil)
    flags["NI"] = _entry(ni, None if ni else _elem_witness(ring, outside[0] if outside.size else 0))
    flags["two_primal"] = _first_bad(ring, nil & ~jr)

    quot = quotient_ring(ring, jacobson_radical(ring).subset)
    qnil = np.flatnonzero((nilpotency_indices(quot) > 0) & (quot.elements() != quot.zero))
    flags["quasi_duo"] = _entry(not qnil.size, _elem_witness(
        ring, int(quot.representatives[qnil[0]]), reason="nonzero nilpotent class in R/J")
        if qnil.size else None)

    flags["reduced"] = _first_bad(ring, nil & (elems != ring.zero))

    fail = commutative_failure(ring)
    flags["commutative"] = _entry(fail is None, fail and _pair_witness(ring, *fail))

    return RingProfile(ring.provenance, ring.order, m, {k: flags[k] for k in FLAG_ORDER})
