"""Executable checks, one function per registry id.

Each check receives its parameters (strings from the suite config) and a
:class:`Context`, and yields one :class:`InstanceResult` per instance.
"""

from __future__ import annotations

from math import prod
from typing import Iterator, Optional

import numpy as np
from sympy import factorint, primefactors

from ..classify import (element_ref, nil_clean, period_table,
                        potent_nilpotent_decompose, potency_exponents, q_bound,
                        check_remark_2_2, lift_potent_mod_nil, strongly_m_nil_clean,
                        tripotent_potent_table, uniform_period, weakly_periodic_witness)
from ..constructions import (AbelianGroupSpec, EndoRing, FormalMatrixRing, GroupRing,
                             MoritaRing, TensorRing, TwistedMatrixRing, abelian_p_groups,
                             combined_exponent_check, elementwise_equal, oracle_isomorphism)
from ..constructions.basic import galois_field
from ..constructions.endo import ORACLE_CAP
from ..constructions.group_ring import group_ring
from ..constructions.matrix import matrix_ring
from ..constructions.morita import trace_report
from ..expr import _Parser, resolve_gens
from ..ring import TABLE_CAP, CapExceeded, FiniteRing, RingError, Subset
from ..structure import (RADICAL_CAP, ProductRing, brute_force_radical_mask, characteristic,
                         direct_product, ideal_closure, ideal_nilpotency_index, is_ideal,
                         jacobson_radical, nilpotency_indices, quotient_ring, subgroup_generators,
                         unit_mask, units_idempotents_nilpotents)
from .model import Context, InstanceResult, Precondition, verdict


# parameter parsing ------------------------------------------------------------

def split_list(text: str) -> list[str]:
    return [t.strip() for t in str(text).split(";") if t.strip()]


def int_range(text: str) -> list[int]:
    """"2..10", "3" or "2; 4; 6"."""
    out: list[int] = []
    for part in split_list(text):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def split_case(text: str) -> tuple[str, str]:
    """"<ring expr> : <extra>", split at the last colon."""
    if ":" not in text:
        raise RingError(f"expected '<ring> : <value>', got {text!r}")
    head, tail = text.rsplit(":", 1)
    return head.strip(), tail.strip()


def prime_bounds(text: str) -> dict[int, int]:
    """"2:16; 3:27" -> {2: 16, 3: 27}."""
    out = {}
    for part in split_list(text):
        p, bound = split_case(part)
        out[int(p)] = int(bound)
    return out


# small shared helpers ------------------------------------------------------------

def nil_mask(ring: FiniteRing) -> np.ndarray:
    return nilpotency_indices(ring) > 0


def radical_mask(ring: FiniteRing) -> np.ndarray:
    return jacobson_radical(ring).subset.mask


def brute_radical(ring: FiniteRing) -> np.ndarray:
    """Brute-force J; above the brute-force cap the instance is skipped."""
    return brute_force_radical_mask(ring, RADICAL_CAP)


def structural_vs_brute(ring: FiniteRing) -> dict:
    structural = ring.structural_radical()
    brute = brute_radical(ring)
    out = {"radical_size": int(brute.sum()), "structural_available": structural is not None}
    if structural is not None:
        diff = np.flatnonzero(structural != brute)
        out["structural_matches_brute"] = not diff.size
        if diff.size:
            out["first_mismatch"] = element_ref(ring, diff[0])
    return out


def is_potent_mask(ring: FiniteRing) -> np.ndarray:
    return period_table(ring)[0] == 1


def hom_failure(src: FiniteRing, dst: FiniteRing, phi: np.ndarray) -> Optional[str]:
    """Check that the index map ``phi`` is a unital ring homomorphism.  Additivity
    is checked against additive generators of ``src``; multiplicativity on pairs
    of those generators then extends by biadditivity."""
    phi = np.asarray(phi)
    if phi[src.one] != dst.one:
        return "identity not preserved"
    gens = subgroup_generators(src, np.ones(src.order, dtype=bool))
    elems = src.elements()
    for g in gens:
        lhs = phi[np.asarray(src.add(elems, g))]
        rhs = np.asarray(dst.add(phi[elems], phi[g]))
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return f"sum {src.label(int(bad[0]))} + {src.label(g)} not preserved"
    for g in gens:
        for h in gens:
            if phi[src.mul(g, h)] != dst.mul(phi[g], phi[h]):
                return f"product {src.label(g)} * {src.label(h)} not preserved"
    return None


def lift_failures(ring: FiniteRing, ideal: Subset) -> tuple[list, int]:
    """For every x: split its class in R/I as potent + nilpotent, lift the potent
    class to a potent f of R, and test that x - f is nilpotent.  Returns the
    offending elements and the number of classes lifted."""
    quot = quotient_ring(ring, ideal)
    proj = np.asarray(quot.projection)
    lift_of = np.full(quot.order, -1, dtype=np.int64)
    cache: dict[int, Optional[tuple]] = {}
    bad = []
    for c in range(quot.order):
        e_bar = potent_nilpotent_decompose(quot, c).b
        if e_bar not in cache:
            cache[e_bar] = lift_potent_mod_nil(ring, ideal, e_bar)
        if cache[e_bar] is None:
            bad.append({"class": quot.label(c), "reason": "no potent lift"})
        else:
            lift_of[c] = cache[e_bar][0]
    if bad:
        return bad, len(cache)
    elems = ring.elements()
    f = lift_of[proj[elems]]
    rest = np.asarray(ring.sub(elems, f))
    pot = potency_exponents(ring)
    fails = np.flatnonzero(~nil_mask(ring)[rest] | (pot[f] == 0))
    for x in fails[:3]:
        bad.append({"element": element_ref(ring, x), "lift": element_ref(ring, f[x])})
    return bad, len(cache)


def diagonal_split(ring: FiniteRing) -> tuple[np.ndarray, np.ndarray]:
    """(S, off) masks: the block-diagonal subring and the off-diagonal elements,
    for Morita context rings and (twisted) matrix rings."""
    coords = ring.decode(ring.elements())
    if isinstance(ring, MoritaRing):
        d = ring.data
        s = (coords[:, 1] == 0) & (coords[:, 2] == 0)
        off = (coords[:, 0] == d.A.zero) & (coords[:, 3] == d.B.zero)
        return s, off
    if isinstance(ring, TwistedMatrixRing):
        z = ring.base.zero
        diag = [c for c, (i, j) in enumerate(ring.positions) if i == j]
        offc = [c for c, (i, j) in enumerate(ring.positions) if i != j]
        s = (coords[:, offc] == z).all(axis=1) if offc else np.ones(ring.order, dtype=bool)
        off = (coords[:, diag] == z).all(axis=1)
        return s, off
    raise Precondition(f"{ring.provenance} has no block-diagonal splitting")


def subring_failure(ring: FiniteRing, mask: np.ndarray) -> Optional[str]:
    idx = np.flatnonzero(mask)
    if not mask[ring.one]:
        return "does not contain one"
    sums = np.asarray(ring.add(idx[:, None], idx[None, :]))
    prods = np.asarray(ring.mul(idx[:, None], idx[None, :]))
    if not mask[sums].all():
        return "not closed under addition"
    if not mask[prods].all():
        return "not closed under multiplication"
    return None


def block_decomposition(ring: FiniteRing) -> dict:
    """T = S + K with S the diagonal subring and K the ideal generated by the
    off-diagonal part: checks S is a subring, K a nil ideal, S + K = T, and that
    t = s + x with s = b + a (b potent, a nilpotent) gives a + x nilpotent."""
    s_mask, off = diagonal_split(ring)
    k = ideal_closure(ring, subgroup_generators(ring, off))
    nil = nil_mask(ring)
    out = {"S_size": int(s_mask.sum()), "K_size": len(k)}
    problem = subring_failure(ring, s_mask)
    if problem:
        out["problem"] = f"diagonal part {problem}"
        return out
    if not nil[k.mask].all():
        raise Precondition("the ideal generated by the off-diagonal part is not nil")
    out["K_nilpotency_index"] = ideal_nilpotency_index(ring, k.mask)
    s_of = np.full(ring.order, -1, dtype=np.int64)
    x_of = np.full(ring.order, -1, dtype=np.int64)
    kidx = k.indices
    for s in np.flatnonzero(s_mask):
        ts = np.asarray(ring.add(int(s), kidx))
        fresh = s_of[ts] < 0
        s_of[ts[fresh]] = s
        x_of[ts[fresh]] = kidx[fresh]
    if (s_of < 0).any():
        out["problem"] = "S + K misses " + ring.label(int(np.argmax(s_of < 0)))
        return out
    a_of = {}
    b_of = {}
    for s in np.unique(s_of):
        d = potent_nilpotent_decompose(ring, int(s))
        a_of[int(s)], b_of[int(s)] = d.a, d.b
        if not (s_mask[d.a] and s_mask[d.b]):
            out["problem"] = f"decomposition of {ring.label(int(s))} leaves S"
            return out
    a_vec = np.array([a_of[int(s)] for s in s_of])
    b_vec = np.array([b_of[int(s)] for s in s_of])
    c = np.asarray(ring.add(a_vec, x_of))
    pot = potency_exponents(ring)
    bad = np.flatnonzero(~nil[c] | (pot[b_vec] == 0))
    out["decomposed"] = ring.order - int(bad.size)
    if bad.size:
        out["problem"] = "nilpotent part fails for " + ring.label(int(bad[0]))
        out["element"] = element_ref(ring, bad[0])
    return out


def quotient_by_radical_order(ring: FiniteRing) -> int:
    return ring.order // len(jacobson_radical(ring).subset)


# section: decompositions and uniform exponents -----------------------------------

def check_uniform_decomposition(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        p = uniform_period(R)
        elems = R.elements()
        converse = np.asarray(R.power(elems, p.n + p.k)) == np.asarray(R.power(elems, p.n))
        bad = []
        for x in range(R.order):
            d = potent_nilpotent_decompose(R, x)
            ok = (R.add(d.a, d.b) == x and R.power(d.b, p.k + 1) == d.b
                  and R.power(d.a, p.n) == R.zero
                  and R.mul(d.a, d.b) == R.zero == R.mul(d.b, d.a))
            if not ok:
                bad.append(d.as_dict(R))
        return verdict(R, not bad and bool(converse.all()),
                       period=p.as_dict(), elements=R.order, decomposed=R.order - len(bad),
                       characteristic=characteristic(R).characteristic,
                       violations=bad[:3])
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_remark(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        rep = check_remark_2_2(R)
        return verdict(R, rep.ok, period=rep.period.as_dict(), characteristic=rep.characteristic,
                       divisibility_applies=rep.part1_applies, divisibility_holds=rep.part1_holds,
                       parity_applies=rep.part2_applies, potent=rep.part2_holds)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_radical_equivalences(params, ctx: Context) -> Iterator[InstanceResult]:
    """J nil with R/J potent, R/J reduced, and Nil(R) an ideal must agree."""
    def run(R):
        jm = brute_radical(R)
        nil = nil_mask(R)
        quot = quotient_ring(R, Subset(R, jm, "radical"))
        qn = nil_mask(quot)
        qn[quot.zero] = False
        one = bool(nil[jm].all() and is_potent_mask(quot).all())
        two = not qn.any()
        three = is_ideal(R, nil)
        return verdict(R, one == two == three, j_nil_and_quotient_potent=one,
                       quotient_reduced=two, nilpotents_form_ideal=three)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_exponent_bound(params, ctx: Context) -> Iterator[InstanceResult]:
    for case in split_list(params["cases"]):
        text, n = split_case(case)

        def run(R, n=int(n)):
            try:
                qb = q_bound(R, n, cap=ctx.cap)
            except CapExceeded:
                raise
            except RingError as exc:
                raise Precondition(str(exc)) from None
            out = verdict(R, qb.verified, n=n, q=qb.q, residue_fields=list(qb.field_orders),
                          matrices=qb.checked,
                          violations=[int(v) for v in qb.violations[:3]])
            return InstanceResult(out.ring, out.status, out.detail, {"n": n})
        yield ctx.attempt(text, run)


def check_sum_of_potents(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        if not isinstance(R, TwistedMatrixRing) or R.kind != "full":
            raise Precondition("expects a full matrix ring M(n, R)")
        base = R.base
        if not is_potent_mask(base).all():
            raise Precondition(f"{base.provenance} is not potent")
        detail = {}
        ok = True
        modes = ["tripotent"]
        if unit_mask(base)[base.scalar(3)]:
            modes.append("idempotent")
        pot = potency_exponents(R)
        for mode in modes:
            table = tripotent_potent_table(R, mode)
            e = 3 if mode == "tripotent" else 2
            missing = [x for x, d in table.items() if not d.found]
            wrong = [x for x, d in table.items()
                     if d.found and (R.power(d.t, e) != d.t or not pot[d.p]
                                     or R.add(d.t, d.p) != x)]
            ok &= not missing and not wrong
            detail[mode] = {"decomposed": len(table) - len(missing), "elements": len(table)}
            if missing or wrong:
                detail[mode]["counterwitness"] = element_ref(R, (missing or wrong)[0])
        detail["modes"] = modes
        return verdict(R, ok, **detail)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


# section: group rings -----------------------------------------------------------

def _group_ring_of(R: FiniteRing) -> GroupRing:
    if not isinstance(R, GroupRing):
        raise Precondition("expects a group ring GR(R, G)")
    return R


def check_group_ring_potency(params, ctx: Context) -> Iterator[InstanceResult]:
    """Criterion (R potent, G abelian, no prime of char R divides |G|) against
    a potency scan of RG."""
    for base in split_list(params["bases"]):
        for group in split_list(params["groups"]):
            def run(RG):
                RG = _group_ring_of(RG)
                R, G = RG.base, RG.group
                pi = characteristic(R).pi
                crit = bool(is_potent_mask(R).all() and G.abelian
                            and all(G.order % p for p in pi))
                potent = is_potent_mask(RG)
                oracle = bool(potent.all())
                detail = {"criterion": crit, "oracle": oracle, "group_abelian": G.abelian,
                          "group_order": G.order, "char_primes": list(pi)}
                if not oracle:
                    detail["non_potent"] = element_ref(RG, int(np.argmax(~potent)))
                return verdict(RG, crit == oracle, **detail)
            yield ctx.attempt(f"GR({base}, {group})", run)


def _coefficient_ideal(big: FiniteRing, base: FiniteRing, which: str, target_of) -> InstanceResult:
    """I = X(R)-entries of ``big`` (X = Nil or J): a nilpotent ideal inside
    J(big), and coefficientwise projection onto ``target_of(R/J)`` is a
    surjective homomorphism with kernel I."""
    jr = jacobson_radical(base).subset
    if which == "nil" and not np.array_equal(nil_mask(base), jr.mask):
        raise Precondition(f"nilpotents of {base.provenance} do not form an ideal")
    coords = big.decode(big.elements())
    mask = jr.mask[coords].all(axis=1)
    ideal = is_ideal(big, mask)
    index = ideal_nilpotency_index(big, mask) if ideal else None
    jbig = brute_radical(big) if big.order <= RADICAL_CAP else radical_mask(big)
    inside = bool(jbig[mask].all())
    quot_base = quotient_ring(base, jr)
    target = target_of(quot_base)
    phi = target.encode(np.asarray(quot_base.projection)[coords])
    problem = hom_failure(big, target, phi)
    kernel_ok = bool(np.array_equal(phi == target.zero, mask))
    onto = bool(np.unique(phi).size == target.order)
    ok = ideal and index is not None and inside and problem is None and kernel_ok and onto
    return verdict(big, ok, ideal_size=int(mask.sum()), is_ideal=ideal, nilpotency_index=index,
                   inside_radical=inside, quotient=target.provenance, quotient_order=target.order,
                   quotient_map=problem or "ok", kernel_matches=kernel_ok, surjective=onto)


def check_group_coefficient_ideal(params, ctx: Context, which: str) -> Iterator[InstanceResult]:
    """Nil(R)G (which="nil") or J(R)G inside RG, with RG/I = (R/J)G."""
    for base in split_list(params["bases"]):
        for group in split_list(params["groups"]):
            def run(RG):
                RG = _group_ring_of(RG)
                return _coefficient_ideal(RG, RG.base, which,
                                          lambda q: group_ring(q, RG.group, cap=ctx.cap))
            yield ctx.attempt(f"GR({base}, {group})", run)


def check_matrix_coefficient_ideal(params, ctx: Context, which: str) -> Iterator[InstanceResult]:
    """M_n(Nil R) or M_n(J(R)) inside M_n(R), with quotient M_n(R/J)."""
    for base in split_list(params["bases"]):
        for n in int_range(params["n"]):
            def run(M):
                if not isinstance(M, TwistedMatrixRing) or M.kind != "full":
                    raise Precondition("expects M(n, R)")
                return _coefficient_ideal(M, M.base, which,
                                          lambda q: matrix_ring(M.n, q, cap=ctx.cap))
            yield ctx.attempt(f"M({n}, {base})", run)


def _p_group_prime(G) -> int:
    primes = primefactors(G.order)
    if len(primes) != 1:
        raise Precondition(f"group of order {G.order} is not a p-group")
    return primes[0]


def check_augmentation(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(RG):
        RG = _group_ring_of(RG)
        R, G = RG.base, RG.group
        p = _p_group_prime(G)
        if not nil_mask(R)[R.scalar(p)]:
            raise Precondition(f"{p} is not nilpotent in {R.provenance}")
        aug = RG.augmentation()
        phi = RG.augmentation_map()
        problem = hom_failure(RG, R, phi)
        onto = np.unique(phi).size == R.order
        ok = aug.nil and aug.ideal_index is not None and problem is None and onto
        return verdict(RG, ok, prime=p, delta_size=len(aug.delta),
                       element_index=aug.element_index, ideal_index=aug.ideal_index,
                       augmentation_map=problem or "ok", surjective=bool(onto))
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_augmentation_lifting(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(RG):
        RG = _group_ring_of(RG)
        R, G = RG.base, RG.group
        p = _p_group_prime(G)
        if not nil_mask(R)[R.scalar(p)]:
            raise Precondition(f"{p} is not nilpotent in {R.provenance}")
        aug = RG.augmentation()
        if not aug.nil:
            return verdict(RG, False, problem="augmentation ideal is not nil")
        bad, classes = lift_failures(RG, aug.delta)
        return verdict(RG, not bad, prime=p, delta_size=len(aug.delta), classes_lifted=classes,
                       elements=RG.order, violations=bad)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def group_center(G) -> list[int]:
    return [g for g in range(G.order) if (G.mul[g, :] == G.mul[:, g]).all()]


def check_central_torsion(params, ctx: Context) -> Iterator[InstanceResult]:
    """Over R of prime characteristic p: for central g take the least n >= 2
    with g^n - g nilpotent (index k) and p^l >= k; then g^((n-1) p^l) = 1."""
    def run(RG):
        RG = _group_ring_of(RG)
        R, G = RG.base, RG.group
        c = characteristic(R).characteristic
        if len(factorint(c)) != 1 or list(factorint(c).values())[0] != 1:
            raise Precondition(f"characteristic {c} is not prime")
        p = c
        ni = nilpotency_indices(RG)
        rows = []
        ok = True
        for g in group_center(G):
            x = RG.group_element(g)
            n = 2
            while ni[RG.sub(RG.power(x, n), x)] == 0:
                n += 1
            k = int(ni[RG.sub(RG.power(x, n), x)])
            l = 0
            while p ** l < k:
                l += 1
            e = (n - 1) * p ** l
            holds = RG.power(x, e) == RG.one
            ok &= holds
            rows.append({"g": G.labels[g], "n": n, "nil_index": k, "exponent": e,
                         "order": G.element_order(g), "holds": bool(holds)})
        return verdict(RG, ok, prime=p, central=rows)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


# section: Morita contexts and formal matrix rings --------------------------------

def _morita_of(R) -> MoritaRing:
    if not isinstance(R, MoritaRing):
        raise Precondition("expects a Morita context ring")
    return R


def check_morita_radical(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        R = _morita_of(R)
        d = R.data
        tr = trace_report(R)
        if tr.mn_index is None or tr.nm_index is None:
            raise Precondition("trace ideals are not nilpotent")
        brute = brute_radical(R)
        ja = radical_mask(d.A)
        jb = radical_mask(d.B)
        predicted = R.block_mask(ja, np.ones(d.m_order, bool), np.ones(d.n_order, bool), jb)
        k_index = ideal_nilpotency_index(R, tr.k_mask)
        law = all(h for _, h in tr.block_law)
        quot = quotient_by_radical_order(R) == (d.A.order // int(ja.sum())) * (d.B.order // int(jb.sum()))
        ok = bool(np.array_equal(brute, predicted)) and k_index is not None and law and quot
        return verdict(R, ok, order=R.order, mn_index=tr.mn_index, nm_index=tr.nm_index,
                       radical_size=int(brute.sum()),
                       radical_is_block=bool(np.array_equal(brute, predicted)),
                       k_nilpotency_index=k_index,
                       block_law=[[l, h] for l, h in tr.block_law], quotient_splits=quot)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_morita_weak(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        R = _morita_of(R)
        tr = trace_report(R)
        if tr.mn_index is None or tr.nm_index is None:
            raise Precondition("trace ideals are not nilpotent")
        law = all(h for _, h in tr.block_law)
        dec = block_decomposition(R)
        ok = law and "problem" not in dec
        return verdict(R, ok, block_law=[[l, h] for l, h in tr.block_law], **dec)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def _nilpotent_twist(R: FiniteRing):
    if isinstance(R, FormalMatrixRing):
        if not nil_mask(R.base)[R.s]:
            raise Precondition(f"s = {R.base.label(R.s)} is not nilpotent")


def check_block_weak(params, ctx: Context) -> Iterator[InstanceResult]:
    """Weakly periodic refinement for triangular / formal matrix rings: the
    diagonal-plus-nil-ideal decomposition and the radical structure."""
    def run(R):
        _nilpotent_twist(R)
        dec = block_decomposition(R)
        rad = structural_vs_brute(R)
        base = R.base if isinstance(R, TwistedMatrixRing) else None
        detail = dict(dec, **rad)
        ok = "problem" not in dec and rad.get("structural_matches_brute", True)
        if base is not None:
            n_diag = sum(1 for i, j in R.positions if i == j)
            want = quotient_by_radical_order(base) ** n_diag
            detail["quotient_order"] = quotient_by_radical_order(R)
            ok &= detail["quotient_order"] == want
        return verdict(R, bool(ok), **detail)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_triangular_radical(params, ctx: Context) -> Iterator[InstanceResult]:
    """J(T_n(R)) = J(R) on the diagonal plus everything strictly above it, and
    T_n(R)/J = (R/J)^n; Morita rings with N = 0 are handled as block rings."""
    def run(R):
        brute = brute_radical(R)
        if isinstance(R, MoritaRing):
            d = R.data
            if d.n_order != 1:
                raise Precondition("expects N = 0")
            predicted = R.block_mask(radical_mask(d.A), np.ones(d.m_order, bool),
                                     np.ones(1, bool), radical_mask(d.B))
            want = quotient_by_radical_order(d.A) * quotient_by_radical_order(d.B)
        elif isinstance(R, TwistedMatrixRing) and R.kind == "upper_triangular":
            jb = radical_mask(R.base)
            coords = R.decode(R.elements())
            predicted = np.ones(R.order, dtype=bool)
            for c, (i, j) in enumerate(R.positions):
                if i == j:
                    predicted &= jb[coords[:, c]]
            want = quotient_by_radical_order(R.base) ** R.n
        else:
            raise Precondition("expects T(n, R) or a Morita ring with N = 0")
        match = bool(np.array_equal(brute, predicted))
        q = R.order // int(brute.sum())
        return verdict(R, match and q == want, radical_size=int(brute.sum()), radical_matches=match,
                       quotient_order=q, expected_quotient_order=want)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_formal_k(params, ctx: Context) -> Iterator[InstanceResult]:
    """For nilpotent central s: J(K_s(R)) = [[J, R], [R, J]], K_s/J = (R/J)^2."""
    def run(R):
        if not isinstance(R, FormalMatrixRing) or R.variant != "K":
            raise Precondition("expects K(R, s=...)")
        _nilpotent_twist(R)
        jb = radical_mask(R.base)
        coords = R.decode(R.elements())
        predicted = np.ones(R.order, dtype=bool)
        for c, (i, j) in enumerate(R.positions):
            if i == j:
                predicted &= jb[coords[:, c]]
        brute = brute_radical(R)
        match = bool(np.array_equal(brute, predicted))
        q = R.order // int(brute.sum())
        want = quotient_by_radical_order(R.base) ** 2
        rad = structural_vs_brute(R)
        return verdict(R, match and q == want and rad["structural_matches_brute"],
                       radical_size=int(brute.sum()), radical_is_block=match, quotient_order=q,
                       structural_matches_brute=rad["structural_matches_brute"])
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def _display_check(R: FormalMatrixRing) -> dict:
    """Column/row products in M_n(R; s): a last-column matrix x times a last-row
    matrix y gives s^2 x_i y_i on the diagonal and s x_i y_j off it in the
    leading block; y times x gives sum s^2 y_k x_k in the corner."""
    b = R.base
    n = R.n
    s = R.s
    s2 = b.mul(s, s)
    zero = b.zero
    vecs = list(np.ndindex(*([b.order] * (n - 1))))
    pairs = 0
    for xv in vecs:
        X = [[zero] * n for _ in range(n)]
        for i in range(n - 1):
            X[i][n - 1] = xv[i]
        xi = R.from_matrix(X)
        for yv in vecs:
            Y = [[zero] * n for _ in range(n)]
            for j in range(n - 1):
                Y[n - 1][j] = yv[j]
            yi = R.from_matrix(Y)
            pairs += 1
            got = R.matrix(R.mul(xi, yi))
            for i in range(n):
                for j in range(n):
                    if i < n - 1 and j < n - 1:
                        w = s2 if i == j else s
                        want = b.mul(w, b.mul(xv[i], yv[j]))
                    else:
                        want = zero
                    if got[i][j] != want:
                        return {"pairs": pairs, "problem": "column-row product", "x": list(map(int, xv)),
                                "y": list(map(int, yv)), "entry": [i, j]}
            got = R.matrix(R.mul(yi, xi))
            acc = zero
            for k in range(n - 1):
                acc = b.add(acc, b.mul(s2, b.mul(yv[k], xv[k])))
            for i in range(n):
                for j in range(n):
                    want = acc if i == j == n - 1 else zero
                    if got[i][j] != want:
                        return {"pairs": pairs, "problem": "row-column product", "x": list(map(int, xv)),
                                "y": list(map(int, yv)), "entry": [i, j]}
    return {"pairs": pairs}


def check_formal_matrix(params, ctx: Context) -> Iterator[InstanceResult]:
    for base in split_list(params["identity_rings"]):
        for s in int_range(params["identity_s"]):
            def run(R, base=base, s=s):
                K = ctx.ring(f"K({base}, s={s * s})")
                diff = elementwise_equal(R, K)
                detail = {"compared_with": K.provenance, "elements": R.order}
                if diff is not None:
                    detail["first_difference"] = [int(v) for v in diff]
                return InstanceResult(R.provenance, "pass" if diff is None else "fail", detail,
                                      {"s": s})
            yield ctx.attempt(f"MS(2, {base}, s={s})", run)
    for text in split_list(params["displays"]):
        def run(R):
            if not isinstance(R, FormalMatrixRing) or R.variant != "Mn":
                raise Precondition("expects MS(n, R, s=...)")
            _nilpotent_twist(R)
            disp = _display_check(R)
            rad = structural_vs_brute(R) if R.order <= RADICAL_CAP else {}
            ok = "problem" not in disp and rad.get("structural_matches_brute", True)
            return verdict(R, bool(ok), **disp, **rad)
        yield ctx.attempt(text, run)


def check_k2_nil_clean(params, ctx: Context) -> Iterator[InstanceResult]:
    for text in split_list(params["rings"]):
        def run(R, text=text):
            K = ctx.ring(f"K({text}, s=2)")
            a, b = nil_clean(R), nil_clean(K)
            detail = {"ring_nil_clean": a.holds, "k2_nil_clean": b.holds, "k2_ring": K.provenance}
            if not a.holds:
                detail["ring_counterwitness"] = element_ref(R, a.counterwitness)
            if not b.holds:
                detail["k2_counterwitness"] = element_ref(K, b.counterwitness)
            return verdict(R, a.holds == b.holds, **detail)
        yield ctx.attempt(text, run)


# section: endomorphism rings -----------------------------------------------------

def _endo_of(R) -> EndoRing:
    if not isinstance(R, EndoRing):
        raise Precondition("expects END(...)")
    return R


def check_endo_finite(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(E):
        E = _endo_of(E)
        spec = E.spec
        detail: dict = {"order": E.order, "gcd_formula": spec.endo_order()}
        ok = E.order == spec.endo_order()
        if spec.order ** len(spec.invariants) <= ORACLE_CAP:
            problem = oracle_isomorphism(E)
            detail["oracle"] = problem or "isomorphic"
            ok &= problem is None
        else:
            detail["oracle"] = "beyond oracle cap"
        parts = [spec.p_part(p).endo_order() for p in spec.primary]
        detail["primary_orders"] = parts
        ok &= prod(parts) == E.order
        # doubling map: its powers repeat, and the gap kills the group exponent
        two = E.scalar(2)
        seen = {}
        y, e = two, 1
        while y not in seen:
            seen[y] = e
            y = E.mul(y, two)
            e += 1
        n, k = seen[y], e - seen[y]
        exponent = int(np.lcm.reduce(np.array(spec.invariants)))
        gap = 2 ** (n + k) - 2 ** n
        detail["doubling_period"] = {"n": n, "k": k}
        ok &= gap % exponent == 0
        if len(spec.invariants) == 1:
            d = spec.invariants[0]
            scal = [E.scalar(r) for r in range(d)]
            same = len(set(scal)) == d == E.order and all(
                E.mul(scal[a], scal[b]) == scal[(a * b) % d] for a in range(d) for b in range(d))
            detail["isomorphic_to_cyclic_ring"] = same
            ok &= same
        if len(set(spec.invariants)) == 1 and len(factorint(spec.invariants[0])) == 1 \
                and list(factorint(spec.invariants[0]).values())[0] == 1:
            p = spec.invariants[0]
            r = len(spec.invariants)
            M = matrix_ring(r, galois_field(p, 1), cap=ctx.cap)
            phi = np.array([M.from_matrix(E.matrix(x)) for x in range(E.order)])
            bij = np.unique(phi).size == M.order == E.order
            problem = hom_failure(E, M, phi)
            detail["matrix_ring_isomorphism"] = "ok" if bij and problem is None else (problem or "not bijective")
            ok &= bij and problem is None
        return verdict(E, bool(ok), **detail)
    for text in split_list(params["groups"]):
        yield ctx.attempt(f"END({text})", run)


def _groups_from(params) -> list[AbelianGroupSpec]:
    out = []
    for p, bound in sorted(prime_bounds(params["max_order"]).items()):
        out.extend(abelian_p_groups(p, bound))
    return out


def _radical_quotient_degree(E: EndoRing) -> Optional[int]:
    """Largest nilpotency index in E/J, by brute force when the quotient is small."""
    jr = jacobson_radical(E).subset
    if E.order // len(jr) > TABLE_CAP:
        return None
    quot = quotient_ring(E, jr)
    return int(nilpotency_indices(quot).max())


def _snc_oracle(E: EndoRing, m: int) -> tuple[bool, dict]:
    res = strongly_m_nil_clean(E, m)
    detail = {}
    if res.holds:
        detail["witness_verified"] = res.verify(E, m, commuting=True)
    else:
        detail["counterwitness"] = element_ref(E, res.counterwitness)
    return res.holds, detail


def check_endo_snc(params, ctx: Context) -> Iterator[InstanceResult]:
    """Divisibility criterion: for each p, (p^i - 1) | (m - 1) for 1 <= i <=
    largest multiplicity n_j of a cyclic summand order in the p-part (this is
    the nilpotency degree of E(G_p)/J); compared with the brute-force verdict."""
    ms = int_range(params["m"])
    for spec in _groups_from(params):
        for m in ms:
            def run(E, m=m, spec=spec):
                E = _endo_of(E)
                degrees = {p: max(spec.multiplicities(p)) for p in spec.primary}
                crit = all((m - 1) % (p ** i - 1) == 0
                           for p, deg in degrees.items() for i in range(1, deg + 1))
                oracle, odetail = _snc_oracle(E, m)
                detail = {"criterion": crit, "oracle": oracle,
                          "degree": {str(p): v for p, v in degrees.items()}, **odetail}
                status = "pass"
                if len(spec.primary) == 1:
                    brute_deg = _radical_quotient_degree(E)
                    if brute_deg is not None:
                        detail["degree_brute"] = brute_deg
                        if brute_deg != max(degrees.values()):
                            status = "fail"
                if odetail.get("witness_verified") is False:
                    status = "fail"
                if status == "pass" and crit != oracle:
                    status = "finding"
                return InstanceResult(E.provenance, status, detail, {"m": m})
            yield ctx.attempt(f"END({spec.text()})", run)


def _distinct_orders(spec: AbelianGroupSpec) -> bool:
    return all(n == 1 for p in spec.primary for n in spec.multiplicities(p))


def check_endo_snc_corollary(params, ctx: Context) -> Iterator[InstanceResult]:
    """For m not 1 mod 3 and not 1 mod 8: strongly m-nil clean iff each p-part
    is a sum of cyclic groups of distinct orders and (p - 1) | (m - 1).  At
    m = 2 the older 'cyclic 2-group' description is compared as well."""
    ms = [m for m in int_range(params["m"]) if m % 3 != 1 and m % 8 != 1]
    for spec in _groups_from(params):
        for m in ms:
            def run(E, m=m, spec=spec):
                E = _endo_of(E)
                crit = _distinct_orders(spec) and all((m - 1) % (p - 1) == 0 for p in spec.primary)
                oracle, odetail = _snc_oracle(E, m)
                detail = {"criterion": crit, "oracle": oracle, **odetail}
                status = "fail" if odetail.get("witness_verified") is False else "pass"
                if status == "pass" and crit != oracle:
                    status = "finding"
                if m == 2:
                    cyclic_two = len(spec.invariants) == 1 and list(spec.primary) == [2]
                    detail["cyclic_2_group_description"] = cyclic_two
                    if status == "pass" and cyclic_two != oracle:
                        status = "finding"
                        detail["finding"] = ("the 'cyclic 2-group' description disagrees with "
                                             "the brute-force verdict")
                return InstanceResult(E.provenance, status, detail, {"m": m})
            yield ctx.attempt(f"END({spec.text()})", run)


def check_endo_snc_even(params, ctx: Context) -> Iterator[InstanceResult]:
    """Even m with m not 1 mod 3: strongly m-nil clean iff G is a 2-group whose
    cyclic summands have pairwise distinct orders.  The literal reading with
    summands of orders 2, 4, ..., 2^t is recorded alongside."""
    ms = [m for m in int_range(params["m"]) if m % 2 == 0 and m % 3 != 1]
    for spec in _groups_from(params):
        for m in ms:
            def run(E, m=m, spec=spec):
                E = _endo_of(E)
                crit = list(spec.primary) == [2] and _distinct_orders(spec)
                exps = sorted(k for k, _ in spec.primary.get(2, []))
                literal = list(spec.primary) == [2] and _distinct_orders(spec) \
                    and exps == list(range(1, len(exps) + 1))
                oracle, odetail = _snc_oracle(E, m)
                detail = {"criterion": crit, "literal_reading": literal, "oracle": oracle, **odetail}
                status = "fail" if odetail.get("witness_verified") is False else "pass"
                if status == "pass" and (crit != oracle or literal != oracle):
                    status = "finding"
                return InstanceResult(E.provenance, status, detail, {"m": m})
            yield ctx.attempt(f"END({spec.text()})", run)


# section: tensor products --------------------------------------------------------

def _tensor_of(R) -> TensorRing:
    if not isinstance(R, TensorRing):
        raise Precondition("expects TEN(A, B)")
    return R


def check_tensor_commutative(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(T):
        T = _tensor_of(T)
        chk = combined_exponent_check(T)
        nil = nil_mask(T)
        nil_ideal = is_ideal(T, nil)
        detail = {"order": T.order, "potent_pairs": chk.pairs, "exponent_failures": list(chk.failures[:3]),
                  "nilpotents_form_ideal": nil_ideal,
                  "idempotents": len(units_idempotents_nilpotents(T).idempotents),
                  "potent": bool(is_potent_mask(T).all())}
        ok = not chk.failures and nil_ideal
        if nil_ideal:
            quot = quotient_ring(T, Subset(T, nil, "ideal"))
            detail["quotient_potent"] = bool(is_potent_mask(quot).all())
            ok &= detail["quotient_potent"]
        return verdict(T, bool(ok), **detail)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_tensor_coefficient_ideal(params, ctx: Context, which: str) -> Iterator[InstanceResult]:
    """X(A) (x) B + A (x) X(B), X = Nil or J, is a nil ideal of A (x) B with
    potent quotient."""
    from ..constructions.tensor import AlgebraRing

    def run(T):
        T = _tensor_of(T)
        A, B = AlgebraRing(T.left), AlgebraRing(T.right)
        parts = {}
        for part in (A, B):
            mask = nil_mask(part) if which == "nil" else radical_mask(part)
            if which == "nil" and not is_ideal(part, mask):
                raise Precondition(f"nilpotents of {part.provenance} do not form an ideal")
            parts[id(part)] = mask
        gens = []
        one_a, one_b = A.decode(A.one), B.decode(B.one)
        for j in subgroup_generators(A, parts[id(A)]):
            gens.append(T.pure_tensor(A.decode(int(j)), one_b))
        for j in subgroup_generators(B, parts[id(B)]):
            gens.append(T.pure_tensor(one_a, B.decode(int(j))))
        ideal = ideal_closure(T, gens)
        nil = nil_mask(T)
        is_nil = bool(nil[ideal.mask].all())
        quot = quotient_ring(T, ideal)
        qpot = bool(is_potent_mask(quot).all())
        return verdict(T, is_nil and qpot, ideal_size=len(ideal), ideal_nil=is_nil,
                       quotient_order=quot.order, quotient_potent=qpot,
                       nilpotents=int(nil.sum()))
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


# section: weakly periodic rings ---------------------------------------------------

def check_characteristic_split(params, ctx: Context) -> Iterator[InstanceResult]:
    """R = prod R/(p^e R) over the prime powers of the characteristic."""
    def run(R):
        cd = characteristic(R)
        c = cd.characteristic
        quots = []
        for p, e in sorted(factorint(c).items()):
            ideal = ideal_closure(R, [R.scalar(p ** e)])
            quots.append(quotient_ring(R, ideal, f"{R.provenance}/{p ** e}"))
        detail = {"characteristic": c, "factors": [q.order for q in quots]}
        if len(quots) == 1:
            return verdict(R, quots[0].order == R.order, **detail)
        P = direct_product(quots, cap=ctx.cap)
        coords = np.stack([np.asarray(q.projection) for q in quots], axis=-1)
        phi = P.encode(coords)
        bij = np.unique(phi).size == R.order == P.order
        problem = hom_failure(R, P, phi)
        detail["bijective"] = bool(bij)
        detail["homomorphism"] = problem or "ok"
        return verdict(R, bij and problem is None, **detail)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def check_product_exponents(params, ctx: Context) -> Iterator[InstanceResult]:
    """In R_1 x ... x R_t: componentwise potent parts e_i (e_i^(n_i) = e_i) and
    nilpotent parts b_i combine to e^l = e with l = prod (n_i - 1) + 1 and
    b^m = 0 with m the largest nilpotency index."""
    def run(P):
        if not isinstance(P, ProductRing):
            raise Precondition("expects a direct product")
        parts = P.factors
        decs = []
        for R in parts:
            pot = potency_exponents(R)
            rows = []
            for x in range(R.order):
                d = potent_nilpotent_decompose(R, x)
                rows.append((d.b, d.a, int(pot[d.b]), d.nil_index))
            decs.append(rows)
        coords = P.decode(P.elements())
        bad = []
        for idx in range(P.order):
            pieces = [decs[i][int(coords[idx, i])] for i in range(len(parts))]
            l = prod(p[2] - 1 for p in pieces) + 1
            m = max(max(p[3], 1) for p in pieces)
            e = P.encode([p[0] for p in pieces])
            b = P.encode([p[1] for p in pieces])
            if P.power(e, l) != e or P.power(b, m) != P.zero or P.add(e, b) != idx:
                bad.append(element_ref(P, idx))
                if len(bad) >= 3:
                    break
        return verdict(P, not bad, elements=P.order, violations=bad)
    for text in split_list(params["products"]):
        yield ctx.attempt(text, run)


def check_characteristic_and_products(params, ctx: Context) -> Iterator[InstanceResult]:
    yield from check_characteristic_split(params, ctx)
    yield from check_product_exponents(params, ctx)


def check_nil_ideal_lifting(params, ctx: Context) -> Iterator[InstanceResult]:
    for case in split_list(params["cases"]):
        text, gens_text = split_case(case)

        def run(R, gens_text=gens_text):
            gens = _Parser(gens_text).gens()
            ideal = ideal_closure(R, resolve_gens(R, gens))
            if not nil_mask(R)[ideal.mask].all():
                raise Precondition("ideal is not nil")
            bad, classes = lift_failures(R, ideal)
            # the idempotent fast path must agree on idempotent classes
            quot = quotient_ring(R, ideal)
            fast_bad = []
            for c in range(quot.order):
                if quot.mul(c, c) == c:
                    f = lift_potent_mod_nil(R, ideal, c, fast_idempotent=True)
                    if f is None or R.mul(f[0], f[0]) != f[0] or quot.projection[f[0]] != c:
                        fast_bad.append(quot.label(c))
            out = verdict(R, not bad and not fast_bad, ideal_size=len(ideal), classes_lifted=classes,
                          elements=R.order, violations=bad, idempotent_lift_failures=fast_bad)
            return InstanceResult(out.ring, out.status, out.detail, {"ideal": gens_text})
        yield ctx.attempt(text, run)


def check_sum_with_nil_ideal(params, ctx: Context) -> Iterator[InstanceResult]:
    def run(R):
        _nilpotent_twist(R)
        dec = block_decomposition(R)
        return verdict(R, "problem" not in dec, **dec)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)


def probe_division_matrices(params, ctx: Context) -> Iterator[InstanceResult]:
    """Both sides hold on finite fields; record the decomposition structure."""
    def run(R):
        wit = weakly_periodic_witness(R)
        hist: dict[int, int] = {}
        bad = 0
        nil_idx = nilpotency_indices(R)
        for x, (p, q, m) in wit.items():
            hist[m] = hist.get(m, 0) + 1
            if R.add(p, q) != x or R.power(p, m) != p or nil_idx[q] == 0:
                bad += 1
        return verdict(R, bad == 0, elements=R.order,
                       potency_exponents={str(k): hist[k] for k in sorted(hist)},
                       max_nil_index=int(nil_idx.max()), invalid=bad)
    for text in split_list(params["rings"]):
        yield ctx.attempt(text, run)
