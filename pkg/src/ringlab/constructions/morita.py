"""Morita context rings [[A, M], [N, B]] from explicit bimodule and pairing tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..ring import AxiomReport, CapExceeded, CoordinateRing, FiniteRing, RingError
from ..structure import (CONSTRUCTION_CAP, additive_span, ideal_power_chain, jacobson_radical,
                         product_span)


def _table(x, shape, what):
    t = np.array(x, dtype=np.int64)
    if t.shape != shape:
        raise RingError(f"{what} table has shape {t.shape}, expected {shape}")
    t.flags.writeable = False
    return t


@dataclass(frozen=True, eq=False)
class MoritaData:
    """Rings A, B; an A-B bimodule M and a B-A bimodule N on indices with zero
    at 0; pairings phi: M x N -> A and psi: N x M -> B."""

    A: FiniteRing
    B: FiniteRing
    m_add: np.ndarray
    n_add: np.ndarray
    am: np.ndarray
    mb: np.ndarray
    bn: np.ndarray
    na: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    m_labels: Optional[tuple] = None
    n_labels: Optional[tuple] = None
    m_neg: np.ndarray = field(init=False, repr=False)
    n_neg: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        a, b = self.A.order, self.B.order
        m = np.asarray(self.m_add).shape[0]
        n = np.asarray(self.n_add).shape[0]
        for name, shape in (("m_add", (m, m)), ("n_add", (n, n)), ("am", (a, m)), ("mb", (m, b)),
                            ("bn", (b, n)), ("na", (n, a)), ("phi", (m, n)), ("psi", (n, m))):
            object.__setattr__(self, name, _table(getattr(self, name), shape, name))
        for name, size, bound in (("m_add", m, m), ("n_add", n, n), ("am", m, m), ("mb", m, m),
                                  ("bn", n, n), ("na", n, n), ("phi", m, a), ("psi", n, b)):
            t = getattr(self, name)
            if t.size and (t.min() < 0 or t.max() >= bound):
                raise RingError(f"{name} table has entries outside 0..{bound - 1}")
        object.__setattr__(self, "m_neg", _negation(self.m_add))
        object.__setattr__(self, "n_neg", _negation(self.n_add))

    @property
    def m_order(self) -> int:
        return self.m_add.shape[0]

    @property
    def n_order(self) -> int:
        return self.n_add.shape[0]

    def m_label(self, i: int) -> str:
        return self.m_labels[i] if self.m_labels else str(int(i))

    def n_label(self, i: int) -> str:
        return self.n_labels[i] if self.n_labels else str(int(i))


def _negation(add: np.ndarray) -> np.ndarray:
    neg = np.argmax(add == 0, axis=1)
    neg.flags.writeable = False
    return neg


def _first(bad: np.ndarray):
    idx = np.argwhere(bad)
    return None if idx.size == 0 else tuple(int(v) for v in idx[0])


def _group_checks(add, name):
    n = add.shape[0]
    i = np.arange(n)
    yield f"{name} addition commutative", add != add.T
    yield f"{name} zero is identity", (add[0] != i)[None, :]
    yield f"{name} has negatives", ~(add == 0).any(axis=1)[None, :]
    yield f"{name} addition associative", \
        add[add[:, :, None], i[None, None, :]] != add[i[:, None, None], add[None, :, :]]


def validate_morita(data: MoritaData) -> AxiomReport:
    """Exhaustive bimodule, pairing and balance checks; first failure wins."""
    A, B = data.A, data.B
    ia, ib = A.elements(), B.elements()
    im, in_ = np.arange(data.m_order), np.arange(data.n_order)
    madd, nadd = data.m_add, data.n_add
    am, mb, bn, na, phi, psi = data.am, data.mb, data.bn, data.na, data.phi, data.psi
    Aadd, Amul = (np.asarray(A.add(ia[:, None], ia[None, :])), np.asarray(A.mul(ia[:, None], ia[None, :])))
    Badd, Bmul = (np.asarray(B.add(ib[:, None], ib[None, :])), np.asarray(B.mul(ib[:, None], ib[None, :])))

    def checks():
        yield from _group_checks(madd, "M")
        yield from _group_checks(nadd, "N")
        # M as left A-module and right B-module
        yield "(a+a')m = am + a'm", am[Aadd] != madd[am[:, None, :], am[None, :, :]]
        yield "a(m+m') = am + am'", am[:, madd] != madd[am[:, :, None], am[:, None, :]]
        yield "(aa')m = a(a'm)", am[Amul] != am[ia[:, None, None], am[None, :, :]]
        yield "1m = m", (am[A.one] != im)[None, :]
        yield "m(b+b') = mb + mb'", mb[:, Badd] != madd[mb[:, :, None], mb[:, None, :]]
        yield "(m+m')b = mb + m'b", mb[madd] != madd[mb[:, None, :], mb[None, :, :]]
        yield "m(bb') = (mb)b'", mb[:, Bmul] != mb[mb[:, :, None], ib[None, None, :]]
        yield "m1 = m", (mb[:, B.one] != im)[None, :]
        yield "(am)b = a(mb)", mb[am] != am[ia[:, None, None], mb[None, :, :]]
        # N as left B-module and right A-module
        yield "(b+b')n = bn + b'n", bn[Badd] != nadd[bn[:, None, :], bn[None, :, :]]
        yield "b(n+n') = bn + bn'", bn[:, nadd] != nadd[bn[:, :, None], bn[:, None, :]]
        yield "(bb')n = b(b'n)", bn[Bmul] != bn[ib[:, None, None], bn[None, :, :]]
        yield "1n = n", (bn[B.one] != in_)[None, :]
        yield "n(a+a') = na + na'", na[:, Aadd] != nadd[na[:, :, None], na[:, None, :]]
        yield "(n+n')a = na + n'a", na[nadd] != nadd[na[:, None, :], na[None, :, :]]
        yield "n(aa') = (na)a'", na[:, Amul] != na[na[:, :, None], ia[None, None, :]]
        yield "n1 = n", (na[:, A.one] != in_)[None, :]
        yield "(bn)a = b(na)", na[bn] != bn[ib[:, None, None], na[None, :, :]]
        # pairings
        yield "phi additive in M", phi[madd] != Aadd[phi[:, None, :], phi[None, :, :]]
        yield "phi additive in N", phi[:, nadd] != Aadd[phi[:, :, None], phi[:, None, :]]
        yield "phi(am, n) = a phi(m, n)", phi[am] != Amul[ia[:, None, None], phi[None, :, :]]
        yield "phi(m, na) = phi(m, n) a", phi[:, na] != Amul[phi[:, :, None], ia[None, None, :]]
        yield "phi(mb, n) = phi(m, bn)", phi[mb.T[:, :, None], in_[None, None, :]] != \
            phi[im[None, :, None], bn[:, None, :]]
        yield "psi additive in N", psi[nadd] != Badd[psi[:, None, :], psi[None, :, :]]
        yield "psi additive in M", psi[:, madd] != Badd[psi[:, :, None], psi[:, None, :]]
        yield "psi(bn, m) = b psi(n, m)", psi[bn] != Bmul[ib[:, None, None], psi[None, :, :]]
        yield "psi(n, mb) = psi(n, m) b", psi[:, mb] != Bmul[psi[:, :, None], ib[None, None, :]]
        yield "psi(na, m) = psi(n, am)", psi[na.T[:, :, None], im[None, None, :]] != \
            psi[in_[None, :, None], am[:, None, :]]
        # balance: (mn)m' = m(nm') and (nm)n' = n(mn')
        yield "phi(m, n) m' = m psi(n, m')", am[phi[:, :, None], im[None, None, :]] != \
            mb[im[:, None, None], psi[None, :, :]]
        yield "psi(n, m) n' = n phi(m, n')", bn[psi[:, :, None], in_[None, None, :]] != \
            na[in_[:, None, None], phi[None, :, :]]

    count = 0
    for name, bad in checks():
        w = _first(np.asarray(bad))
        count += np.asarray(bad).size
        if w is not None:
            return AxiomReport(False, name, w, True, count)
    return AxiomReport(True, None, None, True, count)


class MoritaRing(CoordinateRing):
    """Carrier (a, m, n, b) with the block matrix product."""

    def __init__(self, data: MoritaData, validated: bool, provenance: Optional[str] = None):
        self.data = data
        self.validated = validated
        d = data
        super().__init__([d.A.order, d.m_order, d.n_order, d.B.order],
                         [d.A.zero, 0, 0, d.B.zero], [d.A.one, 0, 0, d.B.one],
                         provenance or f"MOR({d.A.provenance}, {d.B.provenance})")

    def _cadd(self, x, y):
        d = self.data
        return np.stack([np.asarray(d.A.add(x[..., 0], y[..., 0])), d.m_add[x[..., 1], y[..., 1]],
                         d.n_add[x[..., 2], y[..., 2]], np.asarray(d.B.add(x[..., 3], y[..., 3]))], -1)

    def _cneg(self, x):
        d = self.data
        return np.stack([np.asarray(d.A.neg(x[..., 0])), d.m_neg[x[..., 1]], d.n_neg[x[..., 2]],
                         np.asarray(d.B.neg(x[..., 3]))], -1)

    def _cmul(self, x, y):
        d = self.data
        x, y = np.broadcast_arrays(x, y)
        a1, m1, n1, b1 = (x[..., i] for i in range(4))
        a2, m2, n2, b2 = (y[..., i] for i in range(4))
        a = d.A.add(d.A.mul(a1, a2), d.phi[m1, n2])
        m = d.m_add[d.am[a1, m2], d.mb[m1, b2]]
        n = d.n_add[d.na[n1, a2], d.bn[b1, n2]]
        b = d.B.add(d.psi[n1, m2], d.B.mul(b1, b2))
        return np.stack([np.asarray(a), m, n, np.asarray(b)], -1)

    def label(self, i):
        a, m, n, b = self.coords(i)
        d = self.data
        return f"[[{d.A.label(a)}, {d.m_label(m)}], [{d.n_label(n)}, {d.B.label(b)}]]"

    def structural_radical(self):
        """[[J(A), M0], [N0, J(B)]] with M0 = {m : phi(m, N) in J(A)} and
        N0 = {n : psi(n, M) in J(B)}; only trusted for validated data."""
        if not self.validated:
            return None
        d = self.data
        ja = jacobson_radical(d.A).subset.mask
        jb = jacobson_radical(d.B).subset.mask
        m0 = ja[d.phi].all(axis=1)
        n0 = jb[d.psi].all(axis=1)
        c = self.decode(self.elements())
        return ja[c[:, 0]] & m0[c[:, 1]] & n0[c[:, 2]] & jb[c[:, 3]]

    def block_mask(self, a_mask, m_mask, n_mask, b_mask) -> np.ndarray:
        c = self.decode(self.elements())
        return (np.asarray(a_mask)[c[:, 0]] & np.asarray(m_mask)[c[:, 1]]
                & np.asarray(n_mask)[c[:, 2]] & np.asarray(b_mask)[c[:, 3]])


def morita_ring(data: MoritaData, validate: bool = True, cap: int = CONSTRUCTION_CAP) -> MoritaRing:
    """Build the context ring; with ``validate`` the bimodule data is checked
    first and a failure raises with the violated condition and witness."""
    size = data.A.order * data.m_order * data.n_order * data.B.order
    if size > cap:
        raise CapExceeded("Morita context ring", size, cap)
    if validate:
        rep = validate_morita(data)
        if not rep.ok:
            raise RingError(f"Morita data fails {rep.axiom!r} at {rep.witness}")
    return MoritaRing(data, validate)


def morita_from_ideals(R: FiniteRing, m_mask, n_mask) -> MoritaData:
    """A = B = R with M, N two-sided ideals of R and all actions and pairings
    given by multiplication in R."""
    m_el = np.flatnonzero(m_mask)
    n_el = np.flatnonzero(n_mask)
    if m_el.size == 0 or m_el[0] != R.zero or n_el.size == 0 or n_el[0] != R.zero:
        raise RingError("ideals must contain zero as their first element")
    pm = np.full(R.order, -1, dtype=np.int64)
    pm[m_el] = np.arange(m_el.size)
    pn = np.full(R.order, -1, dtype=np.int64)
    pn[n_el] = np.arange(n_el.size)
    r = R.elements()

    def via(pos, table):
        out = pos[np.asarray(table)]
        if (out < 0).any():
            raise RingError("subset is not closed under the ring operations")
        return out

    return MoritaData(
        A=R, B=R,
        m_add=via(pm, R.add(m_el[:, None], m_el[None, :])),
        n_add=via(pn, R.add(n_el[:, None], n_el[None, :])),
        am=via(pm, R.mul(r[:, None], m_el[None, :])),
        mb=via(pm, R.mul(m_el[:, None], r[None, :])),
        bn=via(pn, R.mul(r[:, None], n_el[None, :])),
        na=via(pn, R.mul(n_el[:, None], r[None, :])),
        phi=np.asarray(R.mul(m_el[:, None], n_el[None, :])),
        psi=np.asarray(R.mul(n_el[:, None], m_el[None, :])),
        m_labels=tuple(R.label(i) for i in m_el),
        n_labels=tuple(R.label(i) for i in n_el),
    )


# trace ideals and the K^{2l} block law --------------------------------------

def _span_table(add: np.ndarray, gens) -> np.ndarray:
    n = add.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    changed = True
    gens = [int(g) for g in gens]
    while changed:
        changed = False
        members = np.flatnonzero(mask)
        for g in gens:
            new = add[members, g]
            if not mask[new].all():
                mask[new] = True
                changed = True
    return mask


def _module_span(add, action, scalars, elements):
    """Additive span in a module of the products s*x for s, x in the masks."""
    prods = action[np.flatnonzero(scalars)[:, None], np.flatnonzero(elements)[None, :]]
    return _span_table(add, np.unique(prods))


@dataclass(frozen=True)
class TraceReport:
    mn: np.ndarray
    nm: np.ndarray
    mn_index: Optional[int]
    nm_index: Optional[int]
    k_mask: np.ndarray
    block_law: tuple  # (l, holds) pairs


def trace_report(ring: MoritaRing, max_l: Optional[int] = None) -> TraceReport:
    """Trace ideals MN, NM (with nilpotency indices) and the check
    K^(2l) = [[(MN)^l, (MN)^l M], [(NM)^l N, (NM)^l]] for K = [[MN, M], [N, NM]]."""
    d = ring.data
    A, B = d.A, d.B
    mn = additive_span(A, np.unique(d.phi))
    nm = additive_span(B, np.unique(d.psi))
    ch_a = ideal_power_chain(A, mn)
    ch_b = ideal_power_chain(B, nm)

    def index(chain, ring_):
        last = chain[-1]
        return len(chain) if last.sum() == 1 and last[ring_.zero] else None

    mn_idx, nm_idx = index(ch_a, A), index(ch_b, B)
    all_m = np.ones(d.m_order, dtype=bool)
    all_n = np.ones(d.n_order, dtype=bool)
    k_mask = ring.block_mask(mn, all_m, all_n, nm)
    if max_l is None:
        max_l = max(mn_idx or len(ch_a), nm_idx or len(ch_b))
    law = []
    power = k_mask
    kpow = [k_mask]  # kpow[j] = K^(j+1)
    for _ in range(2 * max_l - 1):
        power = product_span(ring, power, k_mask)
        kpow.append(power)
    for l in range(1, max_l + 1):
        # chains stop once they reach zero or stabilise
        a_l = ch_a[min(l, len(ch_a)) - 1]
        b_l = ch_b[min(l, len(ch_b)) - 1]
        m_l = _module_span(d.m_add, d.am, a_l, all_m)
        n_l = _module_span(d.n_add, d.bn, b_l, all_n)
        predicted = ring.block_mask(a_l, m_l, n_l, b_l)
        law.append((l, bool(np.array_equal(kpow[2 * l - 1], predicted))))
    return TraceReport(mn, nm, mn_idx, nm_idx, k_mask, tuple(law))
