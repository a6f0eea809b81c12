"""
Standard groups and group constructions.

Named groups (symmetric, alternating, cyclic, dihedral, quaternion, Frobenius),
products, quotients, cores, derived series and Sylow subgroups.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, primitive_root

from classbound.config import get_config
from classbound.core.finite_group import FiniteGroup, GroupLike, Subgroup, as_subgroup
from classbound.core.permutation import Permutation, shift
from classbound.errors import CapExceeded, NotASubgroup, NotNormal

logger = logging.getLogger(__name__)


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup(max(n, 1), [], name=f"S{n}")
    gens = [Permutation.from_cycles("(0 1)", n)]
    if n > 2:
        gens.append(Permutation.from_cycles("(" + " ".join(map(str, range(n))) + ")", n))
    return FiniteGroup(n, gens, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup(max(n, 1), [], name=f"A{n}")
    gens = [Permutation.from_cycles(f"(0 1 {i})", n) for i in range(2, n)]
    return FiniteGroup(n, gens, name=f"A{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1, [], name="C1")
    return FiniteGroup(n, [Permutation(tuple((i + 1) % n for i in range(n)))], name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral_group needs n >= 3 for a faithful action on n points")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return FiniteGroup(n, [rotation, reflection], name=f"D{2 * n}")


def quaternion_group() -> FiniteGroup:
    """Q8 in its regular representation; points 0..7 are 1,-1,i,-i,j,-j,k,-k."""
    i = Permutation.from_cycles("(0 2 1 3)(4 7 5 6)", 8)
    j = Permutation.from_cycles("(0 4 1 5)(2 6 3 7)", 8)
    return FiniteGroup(8, [i, j], name="Q8")


def frobenius_group(q: int, p: int) -> FiniteGroup:
    """The order-qp subgroup of AGL(1, p): x -> x + 1 and x -> a x with a of order q."""
    if not isprime(p) or (p - 1) % q != 0:
        error_msg = f"Frobenius group F({q},{p}) needs p prime and q | p - 1"
        logger.error(error_msg)
        raise ValueError(error_msg)
    a = pow(int(primitive_root(p)), (p - 1) // q, p)
    translation = Permutation(tuple((x + 1) % p for x in range(p)))
    scaling = Permutation(tuple((a * x) % p for x in range(p)))
    return FiniteGroup(p, [translation, scaling], name=f"F({q},{p})")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """A x B acting on the disjoint union of their point sets."""
    degree = A.degree + B.degree
    gens = [shift(g, 0, degree) for g in A.generators]
    gens += [shift(g, A.degree, degree) for g in B.generators]
    blocks = [tuple(range(A.degree)), tuple(range(A.degree, degree))]
    return FiniteGroup(degree, gens, name=name or f"{A.name}x{B.name}", blocks=blocks)


def wreath_product(A: FiniteGroup, P: FiniteGroup, name: str = "", cap: Optional[int] = None) -> FiniteGroup:
    """A wr P in its imprimitive action on ``P.degree * A.degree`` points.

    Point ``(i, a)`` (block i, point a) is numbered ``i * A.degree + a``.

    Raises:
        CapExceeded: If ``|A|**n * |P|`` exceeds the cap.
    """
    n, d = P.degree, A.degree
    cap = cap if cap is not None else get_config().cap
    projected = A.order ** n * P.order
    if projected > cap:
        error_msg = f"{A.name} wr {P.name} has order {projected} > cap {cap}"
        logger.error(error_msg)
        raise CapExceeded(error_msg)
    degree = n * d
    gens = [shift(g, i * d, degree) for i in range(n) for g in A.generators]
    for pi in P.generators:
        gens.append(Permutation(tuple(pi.images[i] * d + a for i in range(n) for a in range(d))))
    blocks = [tuple(range(i * d, (i + 1) * d)) for i in range(n)]
    return FiniteGroup(degree, gens, name=name or f"{A.name}wr{P.name}", blocks=blocks, cap=cap)


def quotient_group(G: GroupLike, N: Subgroup, name: str = "") -> Tuple[FiniteGroup, np.ndarray]:
    """G/N as a permutation group on the cosets of N.

    Returns:
        The quotient group and a projection array over parent indices (the
        quotient element of each member of G, ``-1`` outside G).

    Raises:
        NotNormal: If N is not a normal subgroup of G.
    """
    H = as_subgroup(G)
    parent = H.parent
    if not N.is_normal_in(H):
        error_msg = f"{N.name} is not normal in {H.name}"
        logger.error(error_msg)
        raise NotNormal(error_msg)
    coset = np.full(parent.order, -1, dtype=np.int64)
    reps: List[int] = []
    for x in H.members:
        if coset[x] >= 0:
            continue
        coset[parent.mul(x, N.members)] = len(reps)
        reps.append(int(x))
    reps_arr = np.asarray(reps, dtype=np.int64)
    index = len(reps)
    gens = [Permutation(tuple(int(c) for c in coset[parent.mul(reps_arr, s)])) for s in H.gens]
    label = name or f"{H.name}/{N.name}"
    Q = FiniteGroup(index, gens, name=label)
    base = np.asarray(Q.base, dtype=np.int64)
    images = coset[parent.mul(reps_arr[base][None, :], reps_arr[:, None])]
    q_index = Q._lookup(images)
    projection = np.full(parent.order, -1, dtype=np.int64)
    projection[H.members] = q_index[coset[H.members]]
    logger.debug(f"{label}: index {index}")
    return Q, projection


def core_of(G: GroupLike, H: Subgroup, name: str = "") -> Subgroup:
    """The largest normal subgroup of G inside H, the intersection of all H**g.

    Raises:
        NotASubgroup: If H is not contained in G.
    """
    K = as_subgroup(G)
    if not H.is_subgroup_of(K):
        error_msg = f"{H.name} is not a subgroup of {K.name}"
        logger.error(error_msg)
        raise NotASubgroup(error_msg)
    parent = K.parent
    current = H.members
    while True:
        keep = np.ones(len(current), dtype=bool)
        for s in K.gens:
            images = parent.conj(current, s)
            pos = np.minimum(np.searchsorted(current, images), len(current) - 1)
            keep &= current[pos] == images
        if keep.all():
            break
        current = current[keep]
    return Subgroup(parent, current, name=name or f"core({H.name})")


def normal_closure(G: GroupLike, elements: Iterable[int], name: str = "") -> Subgroup:
    """Smallest subgroup of G containing ``elements`` and normalized by G."""
    K = as_subgroup(G)
    parent = K.parent
    gens = np.asarray(list(elements), dtype=np.int64)
    members = parent.closure(gens)
    while True:
        images = parent.conj(gens[:, None], K.gens[None, :]).ravel()
        pos = np.minimum(np.searchsorted(members, images), len(members) - 1)
        missing = np.unique(images[members[pos] != images])
        if missing.size == 0:
            break
        gens = np.concatenate([gens, missing])
        members = parent.closure(gens)
    return Subgroup(parent, members, gens, name=name or f"<<{len(gens)} gens>>")


def derived_subgroup(G: GroupLike, name: str = "") -> Subgroup:
    K = as_subgroup(G)
    parent = K.parent
    gens = K.gens
    if len(gens) == 0:
        return Subgroup(parent, [parent.identity_index], [], name=name or f"{K.name}'")
    a, b = gens[:, None], gens[None, :]
    commutators = parent.mul(parent.mul(parent.inv(a), parent.inv(b)), parent.mul(a, b)).ravel()
    return normal_closure(K, np.unique(commutators), name=name or f"{K.name}'")


def center(G: GroupLike, name: str = "") -> Subgroup:
    K = as_subgroup(G)
    parent = K.parent
    mask = np.ones(K.order, dtype=bool)
    for s in K.gens:
        mask &= parent.mul(K.members, s) == parent.mul(s, K.members)
    return Subgroup(parent, K.members[mask], name=name or f"Z({K.name})")


def is_subnormal(H: Subgroup, G: GroupLike) -> bool:
    """Decide subnormality through the chain of successive normal closures."""
    K = as_subgroup(G)
    if not H.is_subgroup_of(K):
        return False
    while True:
        closure = normal_closure(K, H.gens)
        if closure.order == K.order:
            return K.order == H.order
        K = closure


def sylow_subgroup(G: GroupLike, p: int, name: str = "") -> Subgroup:
    """A Sylow p-subgroup, grown greedily by joining p-elements."""
    K = as_subgroup(G)
    parent = K.parent
    orders = K.element_orders()
    mask = np.asarray([o > 1 and _is_power_of(int(o), p) for o in orders], dtype=bool)
    current = np.asarray([parent.identity_index], dtype=np.int64)
    gens: List[int] = []
    for x in K.members[mask]:
        pos = np.searchsorted(current, x)
        if pos < len(current) and current[pos] == x:
            continue
        trial = parent.closure(gens + [int(x)])
        if _is_power_of(len(trial), p):
            gens.append(int(x))
            current = trial
    return Subgroup(parent, current, gens, name=name or f"Syl{p}({K.name})")


def derived_series(G: GroupLike) -> List[Subgroup]:
    """G, G', G'', ... down to the first repeated term."""
    series = [as_subgroup(G)]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def subgroup_from_cycles(G: FiniteGroup, cycles: Sequence[str], name: str = "") -> Subgroup:
    perms = [Permutation.from_cycles(c, G.degree) for c in cycles]
    return G.subgroup(perms, name=name)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0 and n > 1:
        n //= p
    return n == 1
