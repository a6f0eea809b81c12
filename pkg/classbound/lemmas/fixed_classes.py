"""
Fixed conjugacy classes |C_cl(N)(g)|.

Three independent routes to the same number:

* direct: conjugate each class representative of N by g and look up its class;
* averaging: (1/|N|) * sum over n in N of |C_N(gn)|;
* coset orbits: the number of N-conjugation orbits on the coset gN.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from classbound.config import get_config
from classbound.core.classes import conjugacy_classes
from classbound.core.finite_group import Subgroup, as_index
from classbound.core.orbits import orbit_labels, orbit_partition
from classbound.errors import CapExceeded, ClassMismatch, NotInvariant

logger = logging.getLogger(__name__)


@dataclass
class CosetOrbitSet:
    """The coset gN split into orbits of an acting group under conjugation.

    Attributes:
        coset_rep: Parent index of g.
        subgroup: N.
        elements: Sorted parent indices of the coset gN.
        labels: Orbit number of each coset element.
        sizes: Orbit sizes.
    """
    coset_rep: int
    subgroup: Subgroup
    elements: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def orbits(self) -> List[np.ndarray]:
        return [self.elements[self.labels == i] for i in range(len(self.sizes))]


@dataclass
class FixedClassReport:
    """Classes of N fixed setwise by conjugation with g."""
    actor: int
    target: Subgroup
    fixed_class_ids: List[int] = field(default_factory=list)
    count: int = 0
    method: str = "direct"


def check_invariant(N: Subgroup, g: int) -> None:
    """Raise NotInvariant unless N**g = N."""
    images = N.parent.conj(N.members, g)
    if not N.contains(images).all():
        error_msg = f"{N.parent.element(g)} does not normalize {N.name}"
        logger.error(error_msg)
        raise NotInvariant(error_msg)


def fixed_classes(N: Subgroup, g) -> FixedClassReport:
    """Classes of N mapped to themselves by conjugation with g.

    Raises:
        NotInvariant: If g does not normalize N.
    """
    gi = as_index(N.parent, g)
    check_invariant(N, gi)
    classes = conjugacy_classes(N)
    images = N.parent.conj(classes.representatives, gi)
    fixed = np.nonzero(classes.class_of(images) == np.arange(classes.k))[0]
    return FixedClassReport(gi, N, [int(i) for i in fixed], int(len(fixed)), "direct")


def fixed_class_count(N: Subgroup, g) -> int:
    return fixed_classes(N, g).count


def fixed_classes_avg_oracle(N: Subgroup, g, limit: Optional[int] = None) -> int:
    """Count fixed classes as the average of |C_N(gn)| over n in N.

    Raises:
        NotInvariant: If g does not normalize N.
        CapExceeded: If |N| is above the oracle limit.
    """
    parent = N.parent
    gi = as_index(parent, g)
    check_invariant(N, gi)
    limit = limit if limit is not None else get_config().oracle_limit
    if N.order > limit:
        error_msg = f"Averaging oracle needs |N| <= {limit}, got {N.order}"
        logger.error(error_msg)
        raise CapExceeded(error_msg)
    coset = parent.mul(gi, N.members)
    step = max(1, (1 << 21) // max(N.order, 1))
    total = 0
    for start in range(0, len(coset), step):
        ys = coset[start:start + step, None]
        commuting = parent.mul(N.members[None, :], ys) == parent.mul(ys, N.members[None, :])
        total += int(np.count_nonzero(commuting))
    if total % N.order:
        error_msg = f"Centralizer sum {total} over {N.name} is not divisible by |N| = {N.order}"
        logger.error(error_msg)
        raise ClassMismatch(error_msg)
    return total // N.order


def coset_conjugation_orbits(N: Subgroup, g, acting: Optional[Sequence[int]] = None) -> CosetOrbitSet:
    """Orbits on gN under conjugation by N (or by the elements ``acting``).

    Raises:
        NotInvariant: If g does not normalize N.
    """
    parent = N.parent
    gi = as_index(parent, g)
    check_invariant(N, gi)
    elements = np.unique(parent.mul(gi, N.members))
    gens = N.gens if acting is None else np.asarray(list(acting), dtype=np.int64)
    maps = []
    for s in gens:
        images = parent.conj(elements, s)
        pos = np.searchsorted(elements, images)
        if np.any(pos >= len(elements)) or np.any(elements[np.minimum(pos, len(elements) - 1)] != images):
            raise NotInvariant(f"Acting element {parent.element(s)} does not preserve the coset")
        maps.append(pos)
    _, labels, sizes = orbit_partition(orbit_labels(len(elements), maps))
    return CosetOrbitSet(gi, N, elements, labels, sizes)


def triple_count(N: Subgroup, g) -> dict:
    """All three fixed-class counts for one (N, g) pair."""
    return {
        "direct": fixed_class_count(N, g),
        "averaging": fixed_classes_avg_oracle(N, g),
        "coset_orbits": len(coset_conjugation_orbits(N, g)),
    }
