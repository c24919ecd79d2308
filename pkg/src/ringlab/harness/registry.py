"""The theorem registry: id -> statement, finite refinement and check function.

Instance sets live in ``data/default_suite.cfg``; an entry here only says
what is checked on an instance.
"""

from __future__ import annotations

from functools import partial

from . import checks as C
from .model import TheoremCheck

_FINITE = "every finite ring is periodic, so both sides hold on finite carriers"


def _entry(id, kind, statement, refinement, run=None):
    return TheoremCheck(id, kind, statement, refinement, {}, run)


_ENTRIES = [
    # group rings
    _entry("lem-3.1", "trivial", "locally finite <=> periodic of locally bounded index",
           "a finite ring is locally finite and has bounded index"),
    _entry("thm-3.4", "check", "R weakly 2-primal periodic, G locally finite => RG periodic",
           "Nil(R)G is a nilpotent ideal inside J(RG) and RG/Nil(R)G = (R/Nil R)G via the "
           "coefficient map", partial(C.check_group_coefficient_ideal, which="nil")),
    _entry("cor-3.5", "check", "R 2-primal periodic, G locally finite => RG periodic",
           "as thm-3.4 on commutative and 2-primal coefficient rings",
           partial(C.check_group_coefficient_ideal, which="nil")),
    _entry("cor-3.6", "trivial", "R commutative, G abelian: RG periodic <=> R periodic, G torsion",
           _FINITE + "; finite groups are torsion"),
    _entry("thm-groupring-potent", "check",
           "RG potent <=> R potent, G abelian torsion, no prime of char R divides a finite subgroup order",
           "criterion compared with a potency scan of every element of RG", C.check_group_ring_potency),
    _entry("thm-3.7", "check", "R one-sided perfect periodic, G locally finite => RG periodic",
           "J(R)G is a nilpotent ideal inside J(RG) and RG/J(R)G = (R/J)G via the coefficient map",
           partial(C.check_group_coefficient_ideal, which="radical")),
    _entry("lem-3.9", "check", "central group elements of RG over prime characteristic have the predicted order",
           "for central g: least n >= 2 with g^n - g nilpotent of index k, p^l >= k, then "
           "g^((n-1) p^l) = 1", C.check_central_torsion),
    _entry("thm-3.10", "check", "R periodic with p nilpotent, G a locally finite p-group => RG weakly periodic",
           "each x in RG is a potent lift of the potent part of its class modulo the augmentation "
           "ideal plus a nilpotent", C.check_augmentation_lifting),
    _entry("cor-3.11", "check", "p nilpotent in R, G a p-group => augmentation ideal is nil",
           "augmentation ideal nilpotent (element and ideal index) and the augmentation map is a "
           "surjective homomorphism with that kernel", C.check_augmentation),
    # matrix rings
    _entry("prop-2.2", "check", "uniform (n, k): every x = a + b with b^(k+1) = b, a^n = 0, ab = ba = 0",
           "explicit decomposition certified for every element, plus x^(n+k) = x^n for all x",
           C.check_uniform_decomposition),
    _entry("rem-2.2", "check", "consequences of the uniform exponent for characteristic and potency",
           "divisibility of the characteristic when k divides 2; potency when k is odd",
           C.check_remark),
    _entry("prop-2.1", "check", "J nil with R/J potent <=> R/J reduced <=> Nil(R) an ideal",
           "all three conditions evaluated independently and compared, on examples and non-examples",
           C.check_radical_equivalences),
    _entry("lem-2.1", "check", "R abelian with J nil and R/J commutative potent => A^q - A nilpotent in M_n(R)",
           "q computed from the residue fields and checked on every n x n matrix",
           C.check_exponent_bound),
    _entry("thm-2.3", "check", "R weakly 2-primal periodic => M_n(R) periodic",
           "M_n(Nil R) is a nilpotent ideal inside J(M_n R) with quotient M_n(R/Nil R)",
           partial(C.check_matrix_coefficient_ideal, which="nil")),
    _entry("cor-2.4", "check", "R 2-primal periodic => M_n(R) periodic",
           "as thm-2.3, on commutative coefficient rings",
           partial(C.check_matrix_coefficient_ideal, which="nil")),
    _entry("cor-2.4-1", "trivial", "R skew-Armendariz periodic => M_n(R) periodic", _FINITE),
    _entry("thm-2.5", "check", "R one-sided perfect periodic => M_n(R) periodic",
           "M_n(J R) = J(M_n R) is nilpotent with quotient M_n(R/J)",
           partial(C.check_matrix_coefficient_ideal, which="radical")),
    _entry("cor-2.6", "trivial", "R Artinian periodic => M_n(R) periodic", _FINITE),
    _entry("thm-2.7", "open", "equivalence of matrix periodicity over abelian periodic rings with a nil-ideal problem",
           "the equivalent conditions quantify over all rings and algebras"),
    _entry("conj-1", "open", "R periodic semi-perfect => M_n(R) periodic",
           "vacuous on finite carriers: every finite matrix ring is periodic"),
    _entry("prop-sumpotents", "check", "over a potent ring every matrix is a tripotent plus a potent",
           "explicit tripotent (and idempotent, when 3 is a unit) plus potent split for every matrix",
           C.check_sum_of_potents),
    _entry("thm-2.9", "check", "Morita context with nilpotent trace ideals is periodic iff A and B are",
           "brute-force J equals [[J(A), M], [N, J(B)]], K is nilpotent and K^(2l) has the predicted "
           "block shape", C.check_morita_radical),
    _entry("cor-formal-triangular", "check", "T(R, S, M) periodic <=> R and S periodic",
           "J(T) = [[J(R), M], [0, J(S)]] and T/J = R/J(R) x S/J(S)", C.check_triangular_radical),
    _entry("cor-upper-triangular", "check", "T_n(R) periodic <=> R periodic",
           "J(T_n R) is J(R) on the diagonal plus the strictly upper part; T_n/J = (R/J)^n",
           C.check_triangular_radical),
    _entry("cor-2.10", "check", "s central nilpotent: K_s(R) periodic <=> R periodic",
           "J(K_s R) = [[J, R], [R, J]] and K_s/J = (R/J)^2", C.check_formal_k),
    _entry("thm-2.11", "check", "s central nilpotent: M_n(R; s) periodic <=> R periodic",
           "M_2(R; s) = K_(s^2)(R) elementwise, the column/row product displays, and structural J "
           "equals brute-force J", C.check_formal_matrix),
    _entry("cor-k2-nilclean", "check", "K_2(R) nil-clean <=> R nil-clean",
           "both sides decided by exhaustive nil-clean search", C.check_k2_nil_clean),
    # endomorphism rings
    _entry("thm-endo-matrix", "trivial", "M_n(R) periodic for all n <=> E(M) periodic for f.g. free M", _FINITE),
    _entry("cor-endo-perfect", "trivial", "R perfect periodic, M f.g. => E(M) periodic", _FINITE),
    _entry("lem-endo-vector", "trivial", "E(V) periodic <=> V finite-dimensional over an algebraic extension of a finite field",
           "finite vector spaces are finite-dimensional over finite fields"),
    _entry("lem-3.10", "trivial", "bounded abelian p-group: E(G) periodic <=> G finite",
           "finite groups are finite"),
    _entry("thm-3.11", "check", "E(G) of a finite abelian group is a finite (hence periodic) ring",
           "matrix model agrees with the generator-image oracle, order matches the gcd formula and "
           "the primary decomposition, E(Z_n) = Z_n, E(Z_p^r) = M_r(F_p), and the doubling map's "
           "exponent gap is killed by the group exponent", C.check_endo_finite),
    _entry("thm-3.12", "check", "E(G) strongly m-nil clean <=> (p^i - 1) | (m - 1) for i up to the nil degree of E(G_p)/J",
           "divisibility criterion compared with the brute-force oracle on every (G, m); "
           "the degree is also recomputed by brute force on E/J", C.check_endo_snc),
    _entry("cor-3.13", "check", "m neither 1 mod 3 nor 1 mod 8: E(G) strongly m-nil clean <=> distinct cyclic orders and (p - 1) | (m - 1)",
           "criterion compared with the brute-force oracle; at m = 2 the cyclic 2-group description "
           "is compared as well", C.check_endo_snc_corollary),
    _entry("cor-3.13-even", "check", "m even, not 1 mod 3: E(G) strongly m-nil clean <=> G a sum of cyclic 2-groups of orders 2, 4, ..., 2^t",
           "read as: G a 2-group with pairwise distinct cyclic orders; the literal reading is "
           "evaluated alongside", C.check_endo_snc_even),
    # tensor products
    _entry("lem-5.1", "check", "A, B commutative periodic => A (x) B periodic",
           "combined exponent (n-1)(m-1)+1 on potent pure tensors, Nil an ideal, potent quotient",
           C.check_tensor_commutative),
    _entry("thm-5.2", "check", "A, B weakly 2-primal periodic => A (x) B periodic",
           "Nil(A) (x) B + A (x) Nil(B) is a nil ideal with potent quotient",
           partial(C.check_tensor_coefficient_ideal, which="nil")),
    _entry("lem-5.3", "trivial", "A, B locally finite => A (x) B locally finite",
           "a tensor product of finite algebras is finite"),
    _entry("thm-5.4", "check", "A, B perfect periodic => A (x) B periodic",
           "J(A) (x) B + A (x) J(B) is a nil ideal with potent quotient",
           partial(C.check_tensor_coefficient_ideal, which="radical")),
    # weakly periodic rings
    _entry("prop-1.6", "check", "periodic rings of positive characteristic split along the characteristic",
           "R = prod R/p^e R (bijective homomorphism); on products the potent exponent "
           "prod (n_i - 1) + 1 and the largest nilpotency index work componentwise",
           C.check_characteristic_and_products),
    _entry("prop-1.7", "check", "I nil, R/I weakly periodic => R weakly periodic",
           "potent parts of classes lift to potents of R, and x minus the lift is nilpotent; the "
           "idempotent fast path agrees", C.check_nil_ideal_lifting),
    _entry("lem-5.4", "check", "T = S + K with S a weakly periodic subring and K a nil ideal => T weakly periodic",
           "S the diagonal subring, K the ideal generated by the off-diagonal part; decomposition "
           "certified for every element", C.check_sum_with_nil_ideal),
    _entry("thm-5.5", "check", "Morita context with nilpotent trace ideals weakly periodic <=> A and B are",
           "block law for K and the diagonal-plus-nil-ideal decomposition", C.check_morita_weak),
    _entry("cor-5.5-triangular", "check", "T(R, S, M) weakly periodic <=> R and S are",
           "diagonal-plus-nil-ideal decomposition and J structure", C.check_block_weak),
    _entry("cor-5.6", "check", "T_n(R) weakly periodic <=> R is",
           "diagonal-plus-nil-ideal decomposition, structural J and T_n/J = (R/J)^n", C.check_block_weak),
    _entry("cor-5.7", "check", "s central nilpotent: K_s(R) weakly periodic <=> R is",
           "diagonal-plus-nil-ideal decomposition and structural J", C.check_block_weak),
    _entry("thm-5.8", "check", "s central nilpotent: M_n(R; s) weakly periodic <=> R is",
           "diagonal-plus-nil-ideal decomposition and structural J", C.check_block_weak),
    _entry("conj-2", "probe", "M_n(D) weakly periodic <=> D finite",
           "both sides hold for finite D; the probe certifies witnesses and records potency exponents",
           C.probe_division_matrices),
    # questions
    _entry("q-1", "open", "R periodic => M_n(R) periodic?", "vacuous on finite carriers"),
    _entry("q-2", "open", "R periodic => M_n(R) weakly periodic?", "vacuous on finite carriers"),
    _entry("q-3", "open", "R periodic => M_n(R) pi-UU?", "vacuous on finite carriers"),
    _entry("q-4", "open", "R UU => M_n(R) pi-UU?", "finite rings are pi-UU"),
    _entry("q-5", "open", "R pi-UU => J(R) nil?", "J of a finite ring is nilpotent"),
    _entry("q-6", "open", "F of characteristic p with torsion units, G torsion => FG pi-UU?",
           "finite group rings are pi-UU"),
]

REGISTRY: dict[str, TheoremCheck] = {e.id: e for e in _ENTRIES}
IDS: tuple[str, ...] = tuple(e.id for e in _ENTRIES)


def get(id: str) -> TheoremCheck:
    try:
        return REGISTRY[id]
    except KeyError:
        raise KeyError(f"unknown theorem id {id!r}") from None
