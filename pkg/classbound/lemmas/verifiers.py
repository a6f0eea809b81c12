"""
Instance-level verifiers for the fixed-class lemmas.

Each verifier computes both sides of one inequality or equality on one concrete
instance and returns a :class:`LemmaCheckRecord`. Maxima over "all g outside
..." are taken over class representatives; the fixed class count is constant on
conjugacy classes (checked by :func:`conjugation_invariance_check`).
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from sympy import isprime

from classbound.config import get_config
from classbound.core.classes import centralizer_order, class_count, conjugacy_classes, is_abelian
from classbound.core.constructions import core_of, quotient_group
from classbound.core.finite_group import GroupLike, Subgroup, as_index, as_subgroup
from classbound.core.subgroups import subgroups_for_all
from classbound.errors import (
    CapExceeded,
    ExcludedDegree,
    HypothesisFailed,
    NotAbelian,
    NotASubgroup,
    NotNormal,
    NotTransitive,
)
from classbound.gfmod.linalg import GfModule, fixed_vector_count, mat_inv
from classbound.lemmas.decomposition import ProductDecomposition
from classbound.lemmas.fixed_classes import check_invariant, coset_conjugation_orbits, fixed_class_count, triple_count
from classbound.lemmas.records import LemmaCheckRecord, make_record

logger = logging.getLogger(__name__)


def _require_normal(N: Subgroup, G: Subgroup) -> None:
    if not N.is_normal_in(G):
        error_msg = f"{N.name} is not normal in {G.name}"
        logger.error(error_msg)
        raise NotNormal(error_msg)


def _preimages(H: Subgroup, projection: np.ndarray, size: int) -> np.ndarray:
    """One preimage in H of every quotient element."""
    pre = np.full(size, -1, dtype=np.int64)
    pre[projection[H.members]] = H.members
    return pre


def _max_fixed(N: Subgroup, reps: np.ndarray) -> int:
    return max((fixed_class_count(N, int(r)) for r in reps), default=0)


# ---------------------------------------------------------------------- Lemma 1.1


def verify_lemma_1_1(G: GroupLike, N: Subgroup, instance: str = "") -> LemmaCheckRecord:
    """k(G) = sum over classes g_iN of G/N of n(C_{G/N}(g_iN), Omega_i).

    The record compares k(G) with the middle sum; its extras also carry the
    right sum of the |C_cl(N)(g_i)|, which must dominate the middle sum.
    """
    H = as_subgroup(G)
    parent = H.parent
    _require_normal(N, H)
    instance = instance or f"{H.name} over {N.name}"
    Q, projection = quotient_group(H, N)
    q_classes = conjugacy_classes(Q)
    pre = _preimages(H, projection, Q.order)
    middle = right = 0
    for q in q_classes.representatives:
        g = int(pre[q])
        stabilizer = H.members[projection[parent.conj(g, H.members)] == q]
        C = Subgroup(parent, stabilizer, name=f"C({q})")
        middle += len(coset_conjugation_orbits(N, g, acting=C.gens))
        right += len(coset_conjugation_orbits(N, g))
    k = conjugacy_classes(H).k
    record = make_record(
        "lemma-1.1", instance, k, middle, relation="==",
        extras={"k(G)": k, "middle_sum": middle, "fixed_sum": right, "k(G/N)": q_classes.k},
    )
    if middle > right:
        logger.error(f"lemma-1.1 on {instance}: middle sum {middle} exceeds fixed-class sum {right}")
        record.holds = False
    return record


# ---------------------------------------------------------------------- Lemma 1.2


def _centralizer_chain(D: ProductDecomposition, xs: np.ndarray) -> List[np.ndarray]:
    """C_1 = N and C_{i+1} = C_i cap C_N(x_i)."""
    parent = D.ambient
    chain = [D.N.members]
    for x in xs[:-1]:
        c = chain[-1]
        chain.append(c[parent.mul(c, x) == parent.mul(x, c)])
    return chain


def _search_commuting(D: ProductDecomposition, xs: np.ndarray, chain: List[np.ndarray]) -> bool:
    """Condition (ii): z_i in C_i with g z_1 ... z_i centralizing x_i for every i."""
    parent = D.ambient
    failed = set()

    def search(i: int, h: int) -> bool:
        prefixes = parent.mul(h, chain[i])
        key = (i, int(prefixes.min()))
        if key in failed:
            return False
        hits = prefixes[parent.mul(prefixes, xs[i]) == parent.mul(xs[i], prefixes)]
        for y in hits:
            if i == D.l - 1 or search(i + 1, int(y)):
                return True
        failed.add(key)
        return False

    return search(0, D.g)


def _search_orbits(D: ProductDecomposition, xs: np.ndarray, chain: List[np.ndarray]) -> bool:
    """Condition (iii): x_i conjugated by g z_1 ... z_{i-1} lies in K_i, in the C_i-orbit of x_i."""
    parent = D.ambient
    ks = [D.K(xs, i) for i in range(D.l)]
    failed = set()

    def search(i: int, h: int) -> bool:
        key = (i, int(parent.mul(h, chain[i]).min()))
        if key in failed:
            return False
        y = int(parent.conj(xs[i], h))
        pos = np.searchsorted(ks[i], y)
        if pos < len(ks[i]) and ks[i][pos] == y:
            zs = chain[i][parent.conj(y, chain[i]) == xs[i]]
            for z in zs:
                if i == D.l - 1 or search(i + 1, int(parent.mul(h, z))):
                    return True
        failed.add(key)
        return False

    return search(0, D.g)


def _with_witnesses(D: ProductDecomposition, i: int, subgroups: List[Subgroup]) -> List[Subgroup]:
    """Add the subgroups of M_i that N itself induces to a sampled list."""
    parent = D.ambient
    extra = [
        D.N.intersection(D.factors[i], name=f"N cap M_{i + 1}"),
        Subgroup(parent, D.projection(i), name=f"pi_{i + 1}(N)"),
    ]
    if D.l == 1:
        extra.append(D.N)
    unique = {U.key(): U for U in subgroups}
    for U in extra:
        unique.setdefault(U.key(), U)
    return list(unique.values())


def _k_values(D: ProductDecomposition, seed: int) -> Tuple[List[int], bool]:
    parent = D.ambient
    G = D.G
    outside = G.members[~D.M.contains(G.members)]
    hm_comps = D.components(parent.power(outside, D.m))
    values, sampled = [], False
    for i, Mi in enumerate(D.factors):
        subgroups, exhaustive = subgroups_for_all(Mi, seed=seed)
        if not exhaustive:
            logger.warning(f"k_{i + 1} over {Mi.name} (order {Mi.order}) uses sampled subgroups")
            sampled = True
            subgroups = _with_witnesses(D, i, subgroups)
        best = 0
        for U in subgroups:
            invariant = np.ones(len(outside), dtype=bool)
            if len(U.gens):
                invariant = U.contains(parent.conj(U.gens[:, None], outside[None, :])).all(axis=0)
            admissible = invariant & U.contains(hm_comps[:, i])
            for h in outside[admissible]:
                best = max(best, fixed_class_count(U, int(h)))
        values.append(best)
    return values, sampled


def verify_lemma_1_2(D: ProductDecomposition, instance: str = "", limit: Optional[int] = None) -> Tuple[LemmaCheckRecord, LemmaCheckRecord]:
    """Both parts of the product lemma.

    Part (a) evaluates conditions (i), (ii) and (iii) independently for every
    x in N and counts the elements on which they agree. Part (b) bounds
    |C_cl(N)(g)| by the product of the k_i.

    Returns:
        The ``lemma-1.2a`` equality record and the ``lemma-1.2b`` bound record.

    Raises:
        CapExceeded: If |N| is above the Lemma 1.2 limit.
        HypothesisFailed: If g lies in M.
    """
    cfg = get_config()
    grouped = not D.normalizes_factors()
    if grouped:
        logger.info(f"{D.name}: g permutes the factors, grouping them by <g>-orbits")
        D = D.grouped_by_orbits()
    instance = instance or D.name
    limit = limit if limit is not None else cfg.lemma_1_2_limit
    N = D.N
    if N.order > limit:
        error_msg = f"Lemma 1.2 search needs |N| <= {limit}, got {N.order}"
        logger.error(error_msg)
        raise CapExceeded(error_msg)
    if D.m == 1:
        error_msg = f"{D.name}: g lies in M, so G - M is empty"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    parent = D.ambient
    classes = conjugacy_classes(N)
    comps = D.components(N.members)
    fixed_elements = classes.class_of(parent.conj(N.members, D.g)) == classes.class_index
    agree = 0
    for pos, xs in enumerate(comps):
        chain = _centralizer_chain(D, xs)
        cond = (bool(fixed_elements[pos]), _search_commuting(D, xs, chain), _search_orbits(D, xs, chain))
        if len(set(cond)) == 1:
            agree += 1
        else:
            logger.error(f"lemma-1.2a on {instance}: conditions disagree at {parent.element(N.members[pos])}: {cond}")
    record_a = make_record(
        "lemma-1.2a", instance, agree, N.order, relation="==",
        extras={"l": D.l, "fixed_elements": int(fixed_elements.sum()), "grouped": grouped},
    )
    k_values, sampled = _k_values(D, cfg.seed)
    record_b = make_record(
        "lemma-1.2b", instance, fixed_class_count(N, D.g), math.prod(k_values),
        mode="sampled" if sampled else "exact",
        extras={"k_i": k_values, "l": D.l, "m": D.m, "grouped": grouped},
    )
    return record_a, record_b


# ---------------------------------------------------------------------- Lemma 2 and c2


def _require_cyclic_setting(D: ProductDecomposition) -> int:
    if not D.is_transitive():
        error_msg = f"{D.name}: g does not permute the factors transitively"
        logger.error(error_msg)
        raise NotTransitive(error_msg)
    p = D.l
    if not isprime(p):
        error_msg = f"{D.name}: number of factors {p} is not prime"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    if not D.N.contains(D.ambient.power(D.g, p)):
        error_msg = f"{D.name}: g^{p} does not lie in {D.N.name}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    return p


def verify_lemma_2(D: ProductDecomposition, instance: str = "") -> LemmaCheckRecord:
    """|C_cl(N)(g)| <= |L| for g permuting p factors transitively.

    Raises:
        NotTransitive: If g does not permute the factors transitively.
        HypothesisFailed: If the factor count is not prime or g^p is not in N.
    """
    p = _require_cyclic_setting(D)
    L = D.L
    return make_record(
        "lemma-2", instance or D.name, fixed_class_count(D.N, D.g), L.order,
        extras={"p": p, "|L|": L.order},
    )


def verify_lemma_c2(D: ProductDecomposition, instance: str = "") -> LemmaCheckRecord:
    """|C_cl(N)(g)| <= k(J) * k(N_0) with N_0 = N cap M_1 and J = N/N_1."""
    p = _require_cyclic_setting(D)
    N0, N1 = D.N0, D.N1
    J = D.J
    kJ, kN0 = class_count(J), class_count(N0)
    return make_record(
        "lemma-c2", instance or D.name, fixed_class_count(D.N, D.g), kJ * kN0,
        extras={
            "p": p, "|N0|": N0.order, "|N1|": N1.order, "|J|": J.order,
            "k(J)": kJ, "k(N0)": kN0, "N1_direct": N1.order == N0.order ** p,
        },
    )


# ---------------------------------------------------------------------- Lemmas b1, b3, c1


def verify_lemma_b1(G: GroupLike, H: Subgroup, instance: str = "") -> LemmaCheckRecord:
    """k(G) <= k(H) + k_0(G/N) * max |C_cl(N)(g)| over g outside every conjugate of H."""
    K = as_subgroup(G)
    if not H.is_subgroup_of(K):
        error_msg = f"{H.name} is not a subgroup of {K.name}"
        logger.error(error_msg)
        raise NotASubgroup(error_msg)
    instance = instance or f"{K.name} with {H.name}"
    N = core_of(K, H)
    classes = conjugacy_classes(K)
    meets_h = np.zeros(classes.k, dtype=bool)
    meets_h[classes.class_of(H.members)] = True
    Q, projection = quotient_group(K, N)
    q_reps = _preimages(K, projection, Q.order)[conjugacy_classes(Q).representatives]
    k0 = int(np.count_nonzero(~meets_h[classes.class_of(q_reps)]))
    max_fixed = _max_fixed(N, classes.representatives[~meets_h])
    kH = class_count(H)
    return make_record(
        "lemma-b1", instance, classes.k, kH + k0 * max_fixed,
        extras={"k(H)": kH, "k0(G/N)": k0, "k(G/N)": class_count(Q), "max_fixed": max_fixed, "|N|": N.order},
    )


def verify_lemma_b3(G: GroupLike, N: Subgroup, instance: str = "") -> LemmaCheckRecord:
    """k(G) <= k(N)/|G/N| + 2 (k(G/N) - 1) max |C_cl(N)(g)| over g in G - N."""
    K = as_subgroup(G)
    _require_normal(N, K)
    classes = conjugacy_classes(K)
    outside = classes.representatives[~N.contains(classes.representatives)]
    max_fixed = _max_fixed(N, outside)
    Q, _ = quotient_group(K, N)
    kQ, kN = class_count(Q), class_count(N)
    rhs = Fraction(kN, Q.order) + 2 * (kQ - 1) * max_fixed
    rhs = int(rhs) if rhs.denominator == 1 else rhs
    return make_record(
        "lemma-b3", instance or f"{K.name} over {N.name}", classes.k, rhs,
        extras={"k(N)": kN, "|G/N|": Q.order, "k(G/N)": kQ, "max_fixed": max_fixed},
    )


def verify_lemma_c1(context: GroupLike, G: Subgroup, N: Subgroup, g, instance: str = "") -> LemmaCheckRecord:
    """|C_G(g)| <= |C_{G/N}(gN)| * |C_N(g)|."""
    ctx = as_subgroup(context)
    parent = ctx.parent
    gi = as_index(parent, g)
    _require_normal(G, ctx)
    _require_normal(N, ctx)
    if not N.is_subgroup_of(G) or not ctx.contains(gi):
        error_msg = f"lemma-c1 needs N <= G and g in {ctx.name}"
        logger.error(error_msg)
        raise HypothesisFailed(error_msg)
    commutators = parent.mul(parent.inv(gi), parent.conj(gi, G.members))
    quotient_centralizer = int(np.count_nonzero(N.contains(commutators))) // N.order
    cN = centralizer_order(N, gi)
    return make_record(
        "lemma-c1", instance or f"{G.name} over {N.name} at {parent.element(gi)}",
        centralizer_order(G, gi), quotient_centralizer * cN,
        extras={"|C_G/N(gN)|": quotient_centralizer, "|C_N(g)|": cN},
    )


# ---------------------------------------------------------------------- permutation-group bounds


def verify_maroti(U: GroupLike, n: Optional[int] = None, instance: str = "") -> LemmaCheckRecord:
    """k(U) <= 3^((n-1)/2) for U <= S_n.

    Raises:
        ExcludedDegree: For n = 2, where S_2 has 2 > sqrt(3) classes.
    """
    H = as_subgroup(U)
    n = H.parent.degree if n is None else n
    if n == 2:
        error_msg = "The permutation-group class bound excludes n = 2"
        logger.error(error_msg)
        raise ExcludedDegree(error_msg)
    k = class_count(H)
    rhs = 3 ** ((n - 1) // 2) if n % 2 else math.sqrt(3) ** (n - 1)
    record = make_record("maroti", instance or f"{H.name} in S{n}", k, rhs, extras={"n": n})
    record.holds = k * k <= 3 ** (n - 1)
    return record


def verify_index_bound(G: GroupLike, N: Subgroup, instance: str = "") -> LemmaCheckRecord:
    """k(G) <= |G/N| k(N). The source prints the factor as (G/N); the index is meant."""
    K = as_subgroup(G)
    _require_normal(N, K)
    index = K.order // N.order
    kN = class_count(N)
    return make_record(
        "index-bound", instance or f"{K.name} over {N.name}", class_count(K), index * kN,
        extras={"|G/N|": index, "k(N)": kN, "reading": "|G/N| * k(N)"},
    )


# ---------------------------------------------------------------------- abelian fixed characters


def _commutator_quotient_order(N: Subgroup, g: int) -> int:
    parent = N.parent
    images = parent.mul(parent.inv(N.gens), parent.conj(N.gens, g))
    return N.order // len(parent.closure(images))


def brauer_check_abelian(N: Union[Subgroup, GfModule], g, instance: str = "") -> LemmaCheckRecord:
    """Fixed classes of an abelian N equal fixed irreducible characters.

    For a permutation group N the fixed characters are those trivial on
    [N, g], so they number |N/[N, g]|. For a module GF(p)^d with g a matrix,
    covectors c transform as c -> g^-1 c and are counted directly.

    Raises:
        NotAbelian: If N is a nonabelian permutation group.
    """
    if isinstance(N, GfModule):
        matrix = np.asarray(g, dtype=np.int64) % N.p
        vectors = N.vectors
        fixed_vectors = fixed_vector_count(matrix, N.p)
        inverse = mat_inv(matrix, N.p)
        fixed_covectors = int(np.count_nonzero(np.all((vectors @ inverse.T) % N.p == vectors, axis=1)))
        return make_record(
            "brauer-abelian", instance or f"GF({N.p})^{N.d}", fixed_vectors, fixed_covectors,
            relation="==", extras={"|N|": N.size},
        )
    if not is_abelian(N):
        error_msg = f"{N.name} is not abelian"
        logger.error(error_msg)
        raise NotAbelian(error_msg)
    gi = as_index(N.parent, g)
    check_invariant(N, gi)
    return make_record(
        "brauer-abelian", instance or f"{N.name} at {N.parent.element(gi)}",
        fixed_class_count(N, gi), _commutator_quotient_order(N, gi),
        relation="==", extras={"|N|": N.order},
    )


def verify_triple_identity(N: Subgroup, g, instance: str = "") -> LemmaCheckRecord:
    """Direct fixed-class count = centralizer average = number of N-orbits on gN."""
    gi = as_index(N.parent, g)
    counts = triple_count(N, gi)
    record = make_record(
        "triple-oracle", instance or f"{N.name} at {N.parent.element(gi)}",
        counts["direct"], counts["averaging"], relation="==", extras=counts,
    )
    if counts["coset_orbits"] != counts["direct"]:
        logger.error(f"triple-oracle on {record.instance}: {counts}")
        record.holds = False
    return record


def conjugation_invariance_check(N: Subgroup, g, G: GroupLike, samples: int = 8, instance: str = "") -> LemmaCheckRecord:
    """|C_cl(N)(g)| = |C_cl(N)(g^x)| for x over the generators of G and seeded samples."""
    H = as_subgroup(G)
    parent = H.parent
    _require_normal(N, H)
    gi = as_index(parent, g)
    rng = np.random.default_rng(get_config().seed)
    xs = np.unique(np.concatenate([H.gens, rng.choice(H.members, size=min(samples, H.order), replace=False)]))
    base = fixed_class_count(N, gi)
    counts: Dict[int, int] = {int(x): fixed_class_count(N, int(parent.conj(gi, x))) for x in xs}
    matches = sum(1 for c in counts.values() if c == base)
    return make_record(
        "conjugation-invariance", instance or f"{N.name} at {parent.element(gi)}", matches, len(counts),
        relation="==", extras={"fixed": base},
    )
