"""
Subgroup sampling for "for all U <= G" hypotheses.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from classbound.config import get_config
from classbound.core.finite_group import GroupLike, Subgroup, as_subgroup
from classbound.errors import CapExceeded

logger = logging.getLogger(__name__)

STRATEGIES = ("all-cyclic", "exhaustive", "random-k-generated")


def cyclic_subgroups(G: GroupLike) -> List[Subgroup]:
    """Every cyclic subgroup of G, ordered by (order, members)."""
    H = as_subgroup(G)
    parent = H.parent
    orders = H.element_orders()
    top = int(orders.max())
    powers = np.empty((top, H.order), dtype=np.int64)
    powers[0] = parent.identity_index
    for e in range(1, top):
        powers[e] = parent.mul(powers[e - 1], H.members)
    found: Dict[bytes, Subgroup] = {}
    for col, (x, o) in enumerate(zip(H.members, orders)):
        members = np.unique(powers[:o, col])
        key = members.tobytes()
        if key not in found:
            found[key] = Subgroup(parent, members, [int(x)], name=f"<{parent.element(x)}>")
    return _canonical(found.values())


def _canonical(subgroups) -> List[Subgroup]:
    return sorted(subgroups, key=lambda S: (S.order, tuple(S.members)))


def all_subgroups(G: GroupLike, limit: Optional[int] = None) -> List[Subgroup]:
    """Every subgroup, by iterated joins of cyclic subgroups.

    Raises:
        CapExceeded: If |G| is above the exhaustive limit.
    """
    H = as_subgroup(G)
    limit = limit if limit is not None else get_config().exhaustive_limit
    if H.order > limit:
        error_msg = f"Exhaustive subgroup enumeration needs |G| <= {limit}, got {H.order}"
        logger.error(error_msg)
        raise CapExceeded(error_msg)
    cached = getattr(H, "_all_subgroups", None)
    if cached is not None:
        return cached
    cyclic = cyclic_subgroups(H)
    found: Dict[bytes, Subgroup] = {S.key(): S for S in cyclic}
    queue = list(cyclic)
    while queue:
        S = queue.pop()
        for C in cyclic:
            if C.is_subgroup_of(S):
                continue
            J = S.join(C)
            if J.key() not in found:
                found[J.key()] = J
                queue.append(J)
    result = _canonical(found.values())
    H._all_subgroups = result
    logger.debug(f"{H.name}: {len(result)} subgroups")
    return result


def subgroup_sample(
    G: GroupLike,
    strategy: str = "all-cyclic",
    seed: Optional[int] = None,
    count: int = 10,
    k: int = 2,
) -> List[Subgroup]:
    """Sample subgroups of G deterministically.

    Args:
        G: Group to sample from.
        strategy: ``all-cyclic``, ``exhaustive`` or ``random-k-generated``.
        seed: Seed for ``random-k-generated``.
        count: Number of subgroups for ``random-k-generated``.
        k: Generators per random subgroup.
    """
    if strategy == "all-cyclic":
        return cyclic_subgroups(G)
    if strategy == "exhaustive":
        return all_subgroups(G)
    if strategy == "random-k-generated":
        H = as_subgroup(G)
        rng = np.random.default_rng(get_config().seed if seed is None else seed)
        result = []
        for i in range(count):
            gens = rng.choice(H.members, size=k, replace=True)
            result.append(Subgroup(H.parent, H.parent.closure(gens), gens, name=f"{H.name}:rand{i}"))
        return result
    raise ValueError(f"Unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def subgroups_for_all(G: GroupLike, seed: Optional[int] = None, samples: int = 20):
    """Subgroups to quantify over, and whether the list is exhaustive.

    Exhaustive up to the configured limit; above it, cyclic subgroups plus
    seeded random two-generated ones, flagged as sampled.
    """
    H = as_subgroup(G)
    if H.order <= get_config().exhaustive_limit:
        return all_subgroups(H), True
    logger.warning(f"{H.name} has order {H.order}: quantifying over sampled subgroups")
    sampled = cyclic_subgroups(H) + subgroup_sample(H, "random-k-generated", seed=seed, count=samples)
    sampled.append(H)
    unique = {S.key(): S for S in sampled}
    return _canonical(unique.values()), False
