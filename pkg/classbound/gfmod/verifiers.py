"""
Verifiers for the module lemmas: class counts of affine groups against the
orbit and block bounds they are compared with.
"""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from classbound.config import get_config
from classbound.core.classes import class_count
from classbound.core.constructions import is_subnormal, quotient_group
from classbound.core.finite_group import Subgroup
from classbound.core.orbits import orbit_labels, orbit_partition
from classbound.core.subgroups import subgroups_for_all
from classbound.errors import CapExceeded, ClassMismatch, HypothesisFailed, NotTransitive
from classbound.gfmod.affine import (
    AffineGroup,
    affine_class_count,
    affine_classes,
    cross_check_classes,
    dual_orbits,
    fixed_classes_affine,
    vector_stabilizer,
)
from classbound.gfmod.blocks import ModuleDecomposition
from classbound.gfmod.bounds import BoundParams, eval_lemd2_bounds
from classbound.gfmod.complement import L_ORDER, complement_report
from classbound.gfmod.linalg import echelon_basis, span_indices
from classbound.gfmod.matrix_group import MatrixGroup, MatrixLike, matrix_group
from classbound.lemmas.records import LemmaCheckRecord, make_record

logger = logging.getLogger(__name__)

LEME2_EXPONENT = 0.74


def resolve_element(G: MatrixGroup, g) -> int:
    """Element index of g, given as an index or as a matrix."""
    if isinstance(g, (int, np.integer)):
        return int(g)
    return G.index_of_matrix(g)


def _subspace(basis, d: int) -> np.ndarray:
    return np.asarray(basis, dtype=np.int64).reshape(-1, d)


def _orbit_representatives(G: MatrixGroup, H: Subgroup, domain: np.ndarray) -> np.ndarray:
    rows = G.perm_image.elements
    maps = [np.searchsorted(domain, rows[s, domain]) for s in H.gens]
    reps, _, _ = orbit_partition(orbit_labels(len(domain), maps))
    return domain[reps]


def _max_class_count(subgroups: Iterable[Subgroup]) -> Tuple[int, Optional[Subgroup]]:
    best, chosen = 0, None
    for S in subgroups:
        k = class_count(S)
        if k > best:
            best, chosen = k, S
    return best, chosen


# ---------------------------------------------------------------------- leme1 and lema3


def verify_leme1(
    G: MatrixGroup,
    V1_basis,
    V2_basis,
    H: Optional[Subgroup] = None,
    instance: str = "",
) -> List[LemmaCheckRecord]:
    """k(HV) as a sum over H-orbits on Irr(V1) of k(C_H(lambda) V2).

    Both sides are computed independently. When gcd(|H|, p) = 1 a second
    record sums over vector orbits on V1 instead.

    Raises:
        NotInvariant: If V1 or V2 is not H-invariant.
        HypothesisFailed: If V1 and V2 do not span V with trivial intersection.
    """
    H = G.whole if H is None else H
    d, p = G.d, G.p
    V1, V2 = _subspace(V1_basis, d), _subspace(V2_basis, d)
    B1, _ = echelon_basis(V1, p, d)
    B2, _ = echelon_basis(V2, p, d)
    _, pivots = echelon_basis(np.concatenate([B1, B2]), p, d)
    if len(pivots) != d or len(B1) + len(B2) != d:
        error_msg = f"Subspaces of dimensions {len(B1)} and {len(B2)} do not split GF({p})^{d}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    instance = instance or f"{H.name} on GF({p})^{len(B1)}+GF({p})^{len(B2)}"
    # raise NotInvariant unless both summands are H-modules
    AffineGroup(G, H, B1, name=f"{H.name}⋉V1")
    AffineGroup(G, H, B2, name=f"{H.name}⋉V2")
    k_HV = affine_class_count(AffineGroup(G, H, name=f"{H.name}⋉V"))

    orbits = dual_orbits(G, H, annihilates=B2)
    dual_terms = []
    for character in orbits.characters:
        C = character.stabilizer(G, H)
        dual_terms.append(affine_class_count(AffineGroup(G, C, B2, name=f"{C.name}⋉V2")))
    records = [make_record(
        "leme1", instance, k_HV, sum(dual_terms), relation="==",
        extras={"k(GV)": k_HV, "n_dual": len(orbits), "terms": dual_terms},
    )]
    if H.order % p == 0:
        return records

    reps = _orbit_representatives(G, H, span_indices(B1, p, d))
    vector_terms = []
    for v in reps:
        C = vector_stabilizer(G, H, int(v))
        vector_terms.append(affine_class_count(AffineGroup(G, C, B2, name=f"{C.name}⋉V2")))
    records.append(make_record(
        "leme1-vector", instance, k_HV, sum(vector_terms), relation="==",
        extras={"k(GV)": k_HV, "n(G,V1)": len(reps), "terms": vector_terms},
    ))
    return records


def verify_lema3(G: MatrixGroup, H: Optional[Subgroup] = None, instance: str = "") -> LemmaCheckRecord:
    """n(H, V) <= (k(HV) |V| / k(H))^(1/2)."""
    H = G.whole if H is None else H
    size = G.module.size
    k_HV = affine_class_count(AffineGroup(G, H))
    k_H = class_count(H)
    n_orbits = G.n_orbits(H)
    return make_record(
        "lema3", instance or f"{H.name} on GF({G.p})^{G.d}", n_orbits, math.sqrt(k_HV * size / k_H),
        extras={"k(GV)": k_HV, "k(G)": k_H, "|V|": size},
    )


# ---------------------------------------------------------------------- block lemmas


def _require_cyclic_block_action(D: ModuleDecomposition, gi: int) -> int:
    p = D.n
    if not isprime(p):
        error_msg = f"{D.name}: block count {p} is not prime"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    perm = D.block_permutation(gi)
    if perm[0] == 0:
        error_msg = f"{D.name}: g does not move the blocks"
        logger.error(error_msg)
        raise NotTransitive(error_msg)
    if D.G.order != p * D.N.order:
        error_msg = f"{D.name}: |G/N| = {D.G.order // D.N.order}, expected {p}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    return p


def _fixed_in_NV(D: ModuleDecomposition, gi: int) -> Tuple[AffineGroup, int]:
    NV = AffineGroup(D.G, D.N, name=f"{D.name}:NV")
    return NV, fixed_classes_affine(NV, NV.encode(gi))


def _k_N0V1(D: ModuleDecomposition) -> int:
    return affine_class_count(AffineGroup(D.image_group(D.N0, [0], name="N0|V1")))


def verify_lemc4(D: ModuleDecomposition, g, instance: str = "") -> List[LemmaCheckRecord]:
    """The fixed-class bound k(J) k(N0 V1) and the chain bound on k(NV).

    The chain bound is (k(S V1) |V1| / k(N/N0)^(1/(p-1)))^(1/2) M m, which must
    not exceed the same expression with k(J) in place of k(N/N0). S is the
    first subgroup of U1 in canonical order with the largest class number.

    Raises:
        HypothesisFailed: If the block count is not prime or |G/N| != p.
        NotTransitive: If g fixes the first block.
    """
    G = D.G
    gi = resolve_element(G, g)
    p = _require_cyclic_block_action(D, gi)
    instance = instance or f"{D.name} at g={gi}"
    seed = get_config().seed

    NV, fixed = _fixed_in_NV(D, gi)
    kJ = class_count(D.J)
    kN0V1 = _k_N0V1(D)
    fixed_record = make_record(
        "lemc4-fixed", instance, fixed, kJ * kN0V1,
        extras={"k(J)": kJ, "k(N0V1)": kN0V1, "|N0|": D.N0.order, "|N1|": D.N1.order},
    )

    U1 = D.U1
    u1_subgroups, u1_exhaustive = subgroups_for_all(U1.whole, seed=seed)
    kS, S = _max_class_count(u1_subgroups)
    kSV1 = affine_class_count(AffineGroup(U1, S, name="S⋉V1"))
    kNN0 = class_count(quotient_group(D.N, D.N0)[0])
    M = 0
    for character in dual_orbits(G, D.N, annihilates=D.W2_basis).characters:
        C = character.stabilizer(G, D.N)
        image = D.image_group(C, range(1, D.n), name="C_N(λ)|W2")
        M = max(M, affine_class_count(AffineGroup(image)))
    n0_subgroups, n0_exhaustive = subgroups_for_all(D.N0, seed=seed)
    m, _ = _max_class_count(n0_subgroups)
    size = D.block_size
    chain = math.sqrt(kSV1 * size / kNN0 ** (1 / (p - 1))) * M * m
    outer = math.sqrt(kSV1 * size / kJ ** (1 / (p - 1))) * M * m
    sampled = not (u1_exhaustive and n0_exhaustive)
    if sampled:
        logger.warning(f"lemc4 on {instance}: subgroup maxima are sampled")
    chain_record = make_record(
        "lemc4-chain", instance, affine_class_count(NV), chain,
        mode="sampled" if sampled else "exact",
        extras={
            "S": S.name, "|S|": S.order, "k(S)": kS, "k(SV1)": kSV1, "k(N/N0)": kNN0,
            "k(J)": kJ, "M": M, "m": m, "with_k(J)": outer,
        },
    )
    if chain > outer * (1 + get_config().tolerance):
        logger.error(f"lemc4 on {instance}: k(N/N0) form {chain} exceeds k(J) form {outer}")
        chain_record.holds = False
    return [fixed_record, chain_record]


def _in_complement(U1: MatrixGroup, seed: Optional[int] = None, subnormal: bool = True) -> bool:
    """Whether U1 <= GL(2, 5) lies in some conjugate of L, as a subnormal subgroup unless ``subnormal`` is false."""
    report = complement_report(seed)
    GL, L = report.ambient, report.group
    parent = GL.perm_image
    L_members = np.sort(GL.indices_of_matrices(L.matrices))
    U_members = GL.indices_of_matrices(U1.matrices)
    U = Subgroup(parent, U_members, name=U1.name)
    seen = set()
    for x in GL.whole.members:
        conjugate = np.sort(parent.conj(L_members, x))
        key = conjugate.tobytes()
        if key in seen:
            continue
        seen.add(key)
        Lx = Subgroup(parent, conjugate, name="L^x")
        if U.is_subgroup_of(Lx) and (not subnormal or is_subnormal(U, Lx)):
            return True
    return False


def verify_leme2(D: ModuleDecomposition, g, instance: str = "") -> LemmaCheckRecord:
    """|C_cl(NV)(g)| <= |V|^0.74 by a structured count.

    Raises:
        HypothesisFailed: If blocks are not GF(5)^2 or U1 does not lie in a conjugate of L.
        CapExceeded: If NV is beyond structured enumeration.
    """
    G = D.G
    gi = resolve_element(G, g)
    p = _require_cyclic_block_action(D, gi)
    if D.p != 5 or D.block_dim != 2:
        error_msg = f"{D.name}: blocks must be GF(5)^2, got GF({D.p})^{D.block_dim}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    if L_ORDER % D.U1.order or not _in_complement(D.U1, subnormal=False):
        error_msg = f"{D.name}: U1 of order {D.U1.order} does not lie in a conjugate of L"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    _, fixed = _fixed_in_NV(D, gi)
    bound = float(D.size) ** LEME2_EXPONENT
    return make_record(
        "leme2", instance or f"{D.name} at g={gi}", fixed, bound,
        extras={"p": p, "|N|": D.N.order, "|U1|": D.U1.order, "floor_bound": math.floor(bound), "route": "structured"},
    )


def verify_leme2_bound(
    p: int,
    block_generators: Optional[Sequence[MatrixLike]] = None,
    instance: str = "",
) -> LemmaCheckRecord:
    """The projection bound |C| <= |N/C_N(V1)| |V1| where no structured count is needed.

    For p >= 5 the bound is |L V1| = 2400. For p = 3 it is n1 * 25 with n1 the
    order of the group generated by ``block_generators`` (the restrictions of
    generators of N to V1), provided n1 <= 48.

    Raises:
        CapExceeded: For p = 3 with n1 > 48, where a structured count is required.
        HypothesisFailed: For p = 2, or p = 3 without block generators.
    """
    size = 25 ** p
    bound = float(size) ** LEME2_EXPONENT
    instance = instance or f"p={p} over GF(5)^2 blocks"
    if p >= 5:
        return make_record(
            "leme2", instance, L_ORDER * 25, bound,
            extras={"p": p, "|V|": size, "route": "projection"},
        )
    if p != 3 or block_generators is None:
        error_msg = f"leme2 at p={p} needs a structured count"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    n1 = matrix_group(5, 2, block_generators, name="N|V1").order
    if n1 > L_ORDER // 2:
        error_msg = f"leme2 at p=3: |N/C_N(V1)| = {n1} > 48 needs the structured count"
        logger.warning(error_msg)
        raise CapExceeded(error_msg)
    return make_record(
        "leme2", instance, n1 * 25, bound,
        extras={"p": p, "n1": n1, "|V|": size, "route": "projection"},
    )


def verify_theoremC_instance(
    G: MatrixGroup,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    instance: str = "",
) -> LemmaCheckRecord:
    """k(GV) <= |V| for V induced from GF(5)^2 with U1 subnormal in L.

    Raises:
        HypothesisFailed: If 5 divides |G|, U1 is trivial or U1 is not
            subnormal in a conjugate of L.
        CapExceeded: If GV is beyond structured enumeration.
    """
    D = ModuleDecomposition(G, n)
    if G.p != 5 or D.block_dim != 2:
        error_msg = f"{G.name}: blocks must be GF(5)^2"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    if not G.is_coprime():
        error_msg = f"{G.name}: 5 divides |G| = {G.order}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    U1 = D.U1
    if U1.order == 1:
        error_msg = f"{G.name}: G1/C_G1(W) is trivial"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    if not _in_complement(U1, seed):
        error_msg = f"{G.name}: U1 of order {U1.order} is not subnormal in a 5-complement"
        logger.warning(error_msg)
        raise HypothesisFailed(error_msg)
    k = affine_class_count(AffineGroup(G, name=f"{G.name}⋉V"))
    return make_record(
        "theoremC", instance or G.name, k, D.size,
        extras={"n": D.n, "|G|": G.order, "|U1|": U1.order, "|N|": D.N.order},
    )


def theoremC_exclusions(seed: Optional[int] = None) -> List[LemmaCheckRecord]:
    """The excluded configurations have k(N1 V1) >= 21.

    Covers N1 = 1 and the reducible cyclic group generated by diag(2, 1).
    """
    trivial = matrix_group(5, 2, [], name="1")
    reducible = matrix_group(5, 2, [[[2, 0], [0, 1]]], name="<diag(2,1)>")
    records = []
    for N1 in (trivial, reducible):
        k = affine_class_count(AffineGroup(N1))
        extras = {"|N1|": N1.order}
        if N1.order > 1:
            extras["subnormal_in_L"] = _in_complement(N1, seed)
        records.append(make_record("theoremC-excluded", N1.name, 21, k, extras=extras))
    return records


def verify_lemd2_instance(D: ModuleDecomposition, g, B: int = 1, instance: str = "") -> LemmaCheckRecord:
    """|C_cl(NV)(g)| <= A_i^f |V1|^(n - p f) for both i.

    p is the order of the block permutation of g and f its number of p-cycles.
    The inductive hypothesis is checked on the block instance U1 V1.

    Raises:
        HypothesisFailed: If GV is not coprime, g acts with non-prime order
            on the blocks, or k(U1 V1) > |V1|.
    """
    G = D.G
    gi = resolve_element(G, g)
    if not G.is_coprime():
        error_msg = f"{D.name}: |G| = {G.order} is divisible by {G.p}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    perm = D.block_permutation(gi)
    seen, cycle_lengths = set(), []
    for start in range(D.n):
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length:
            cycle_lengths.append(length)
    p = max(cycle_lengths)
    if p == 1 or not isprime(p) or any(c not in (1, p) for c in cycle_lengths):
        error_msg = f"{D.name}: g permutes the blocks with cycle lengths {cycle_lengths}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    f = cycle_lengths.count(p)
    kU1V1 = affine_class_count(AffineGroup(D.U1))
    if kU1V1 > D.block_size:
        error_msg = f"{D.name}: k(U1V1) = {kU1V1} > |V1| = {D.block_size}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    params = BoundParams(p=p, n=D.n, f=f, V1=D.block_size, B=B)
    A1_bound, A2_bound = eval_lemd2_bounds(params)
    _, fixed = _fixed_in_NV(D, gi)
    return make_record(
        "lemd2", instance or f"{D.name} at g={gi}", fixed, min(A1_bound, A2_bound),
        extras={"p": p, "f": f, "A1_bound": A1_bound, "A2_bound": A2_bound, "k(U1V1)": kU1V1},
    )


def verify_affine_cross_check(G: MatrixGroup, H: Optional[Subgroup] = None, instance: str = "") -> LemmaCheckRecord:
    """Structured and brute-force class counts of H V agree element by element.

    Raises:
        HypothesisFailed: If p divides |H|, where only brute force applies.
    """
    GV = AffineGroup(G, H, name=f"{(H or G.whole).name}⋉V")
    if not GV.is_coprime():
        error_msg = f"{GV.name}: structured classes need gcd(|H|, p) = 1"
        logger.info(error_msg)
        raise HypothesisFailed(error_msg)
    instance = instance or GV.name
    structured = affine_classes(GV, "structured").k
    brute = affine_classes(GV, "brute").k
    record = make_record("affine-cross-check", instance, structured, brute, relation="==", extras={"|HV|": GV.order})
    try:
        cross_check_classes(GV)
    except ClassMismatch as e:
        record.holds = False
        record.extras["mismatch"] = str(e)
    return record


def verify_dual_orbit_count(G: MatrixGroup, H: Optional[Subgroup] = None, instance: str = "") -> LemmaCheckRecord:
    """For coprime H, the orbits on Irr(V) and on V have the same number.

    Raises:
        HypothesisFailed: If p divides |H|.
    """
    H = G.whole if H is None else H
    if H.order % G.p == 0:
        error_msg = f"{H.name}: p = {G.p} divides |H| = {H.order}"
        logger.info(error_msg)
        raise HypothesisFailed(error_msg)
    return make_record(
        "brauer-dual", instance or f"{H.name} on GF({G.p})^{G.d}", len(dual_orbits(G, H)), G.n_orbits(H),
        relation="==", extras={"|H|": H.order},
    )
