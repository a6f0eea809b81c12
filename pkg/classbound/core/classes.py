"""
Conjugacy classes, centralizers and fingerprints.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

import numpy as np

from classbound.core.finite_group import GroupLike, Subgroup, as_index, as_subgroup
from classbound.core.orbits import orbit_labels, orbit_partition, transversal
from classbound.errors import ElementNotInGroup

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ClassSet:
    """Conjugacy classes of a group.

    Attributes:
        group: The subgroup whose classes these are.
        representatives: Parent indices of the class representatives; each is the
            smallest index, hence the lexicographically least element, of its class.
        sizes: Class sizes, aligned with ``representatives``.
        class_index: Class number of every member, by position in ``group.members``.
        maps: Conjugation maps (on member positions) of the group generators.
    """
    group: Subgroup
    representatives: np.ndarray
    sizes: np.ndarray
    class_index: np.ndarray
    maps: List[np.ndarray]

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def k(self) -> int:
        return len(self.representatives)

    def class_of(self, idx) -> np.ndarray:
        """Class numbers of parent indices.

        Raises:
            ElementNotInGroup: If any index lies outside the group.
        """
        pos = self.group.position(idx)
        if np.any(pos < 0):
            error_msg = f"Element outside {self.group.name} passed to class_of"
            logger.error(error_msg)
            raise ElementNotInGroup(error_msg)
        return self.class_index[pos]

    @cached_property
    def conjugators(self) -> np.ndarray:
        """For each member position, a group element t with ``rep ** t`` equal to that member."""
        parent = self.group.parent
        rep_pos = self.group.position(self.representatives)
        return transversal(
            rep_pos, self.maps, list(self.group.gens),
            lambda ts, s: parent.mul(ts, s), parent.identity_index, self.group.order,
        )


def conjugation_maps(group: Subgroup, acting: np.ndarray, domain: np.ndarray) -> List[np.ndarray]:
    """Index maps on positions of the sorted ``domain`` induced by conjugation.

    ``domain`` must be invariant under conjugation by every element of ``acting``.
    """
    parent = group.parent
    maps = []
    for s in acting:
        images = parent.conj(domain, s)
        pos = np.searchsorted(domain, images)
        maps.append(pos.astype(np.int64))
    return maps


def conjugacy_classes(G: GroupLike) -> ClassSet:
    """Partition the elements of G into conjugacy classes (cached on the subgroup)."""
    H = as_subgroup(G)
    cached = getattr(H, "_classes", None)
    if cached is not None:
        return cached
    maps = conjugation_maps(H, H.gens, H.members)
    labels = orbit_labels(H.order, maps)
    reps, index, sizes = orbit_partition(labels)
    result = ClassSet(H, H.members[reps], sizes, index, maps)
    H._classes = result
    logger.debug(f"{H.name}: {len(reps)} conjugacy classes")
    return result


def class_count(G: GroupLike) -> int:
    return conjugacy_classes(G).k


def centralizer(G: GroupLike, x, strict: bool = True) -> Subgroup:
    """C_G(x) for an element index or permutation x of the parent.

    Raises:
        ElementNotInGroup: If ``strict`` and x is not in G.
    """
    H = as_subgroup(G)
    parent = H.parent
    xi = as_index(parent, x)
    if strict and not H.contains(xi):
        error_msg = f"{parent.element(xi)} is not an element of {H.name}"
        logger.error(error_msg)
        raise ElementNotInGroup(error_msg)
    mask = parent.mul(H.members, xi) == parent.mul(xi, H.members)
    return Subgroup(parent, H.members[mask], name=f"C({H.name})")


def centralizer_order(G: GroupLike, x) -> int:
    H = as_subgroup(G)
    parent = H.parent
    xi = as_index(parent, x)
    return int(np.count_nonzero(parent.mul(H.members, xi) == parent.mul(xi, H.members)))


@dataclass(frozen=True)
class GroupFingerprint:
    """Isomorphism invariants: order, class sizes, element-order histogram."""
    order: int
    class_sizes: Tuple[int, ...]
    order_histogram: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.order,
            "class_sizes": list(self.class_sizes),
            "order_histogram": {str(k): v for k, v in self.order_histogram},
        }


def fingerprint(G: GroupLike) -> GroupFingerprint:
    H = as_subgroup(G)
    classes = conjugacy_classes(H)
    histogram = Counter(int(o) for o in H.element_orders())
    return GroupFingerprint(
        order=H.order,
        class_sizes=tuple(sorted(int(s) for s in classes.sizes)),
        order_histogram=tuple(sorted(histogram.items())),
    )


def is_abelian(G: GroupLike) -> bool:
    H = as_subgroup(G)
    parent = H.parent
    gens = H.gens
    return bool(np.all(parent.mul(gens[:, None], gens[None, :]) == parent.mul(gens[None, :], gens[:, None])))
