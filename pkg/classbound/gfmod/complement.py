"""
The 5-complement L of GL(2, 5).

L is found by a seeded search over subgroups generated by pairs of
5'-elements and then pinned by structural checks. All subgroups of order 96
are conjugate in GL(2, 5), so any hit is L up to conjugacy.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional

import numpy as np

from classbound.config import get_config
from classbound.core.classes import fingerprint
from classbound.core.constructions import (
    center,
    cyclic_group,
    derived_series,
    quaternion_group,
    quotient_group,
    symmetric_group,
    sylow_subgroup,
    wreath_product,
)
from classbound.core.finite_group import Subgroup
from classbound.errors import SearchFailed
from classbound.gfmod.affine import dual_orbits
from classbound.gfmod.linalg import identity_matrix
from classbound.gfmod.matrix_group import MatrixGroup, general_linear_group

logger = logging.getLogger(__name__)

L_ORDER = 96


@dataclass
class ComplementReport:
    """L together with the structural facts checked on it."""
    group: MatrixGroup
    ambient: MatrixGroup
    seed: int
    attempts: int
    generators: List[List[List[int]]]
    derived_orders: List[int]
    center_order: int
    center_quotient_is_s4: bool
    quotient_by_minus_one_order: int
    second_derived_is_q8: bool
    sylow2_is_c4_wr_c2: bool
    vector_orbits: int
    dual_orbit_count: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.group.order,
            "seed": self.seed,
            "attempts": self.attempts,
            "generators": self.generators,
            "derived_orders": self.derived_orders,
            "center_order": self.center_order,
            "center_quotient_is_s4": self.center_quotient_is_s4,
            "quotient_by_minus_one_order": self.quotient_by_minus_one_order,
            "second_derived_is_q8": self.second_derived_is_q8,
            "sylow2_is_c4_wr_c2": self.sylow2_is_c4_wr_c2,
            "vector_orbits": self.vector_orbits,
            "dual_orbits": self.dual_orbit_count,
            "stated_center_reproduced": self.center_order == 2,
            "notes": list(self.notes),
        }


def _pinned(GL: MatrixGroup, H: Subgroup) -> Dict[str, Any]:
    """Structural checks on a candidate of order 96; ``pinned`` is true when all pass."""
    series = derived_series(H)
    second_derived_is_q8 = len(series) >= 3 and fingerprint(series[2]) == fingerprint(quaternion_group())
    c4_wr_c2 = wreath_product(cyclic_group(4), cyclic_group(2))
    sylow2_is_c4_wr_c2 = fingerprint(sylow_subgroup(H, 2)) == fingerprint(c4_wr_c2)
    transitive = GL.n_orbits(H) == 2 and len(dual_orbits(GL, H)) == 2
    return {
        "series": series,
        "second_derived_is_q8": second_derived_is_q8,
        "sylow2_is_c4_wr_c2": sylow2_is_c4_wr_c2,
        "pinned": second_derived_is_q8 and sylow2_is_c4_wr_c2 and transitive,
    }


def find_five_complement(seed: Optional[int] = None, max_attempts: int = 2000) -> ComplementReport:
    """Search GL(2, 5) for a subgroup of order 96.

    Raises:
        SearchFailed: If no pinned subgroup turns up within ``max_attempts`` pairs.
    """
    seed = get_config().seed if seed is None else seed
    GL = general_linear_group(2, 5)
    parent = GL.perm_image
    five_prime = GL.whole.members[parent.element_orders[GL.whole.members] % 5 != 0]
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        pair = rng.choice(five_prime, size=2, replace=False)
        members = parent.closure(pair)
        if len(members) != L_ORDER:
            continue
        H = Subgroup(parent, members, pair, name="L")
        checks = _pinned(GL, H)
        if not checks["pinned"]:
            logger.warning(f"Order-96 candidate at attempt {attempt} failed the structural checks")
            continue
        return _report(GL, H, checks, seed, attempt)
    error_msg = f"No 5-complement of GL(2,5) found in {max_attempts} attempts with seed {seed}"
    logger.error(error_msg)
    raise SearchFailed(error_msg)


def _report(GL: MatrixGroup, H: Subgroup, checks: Dict[str, Any], seed: int, attempts: int) -> ComplementReport:
    series = checks["series"]
    Z = center(H)
    quotient, _ = quotient_group(H, Z)
    minus_one = GL.matrix_subgroup([(-identity_matrix(2)) % 5], name="<-I>")
    by_minus_one, _ = quotient_group(H, minus_one)
    L = GL.subgroup(H, name="L")
    notes = []
    if Z.order != 2:
        notes.append(
            f"Z(L) has order {Z.order} (the scalars of GL(2,5)); L/Z(L) has order {quotient.order}, "
            f"L/<-I> has order {by_minus_one.order}"
        )
        logger.warning(f"L: {notes[-1]}")
    logger.info(f"Found L of order {H.order} after {attempts} attempts (seed {seed})")
    return ComplementReport(
        group=L,
        ambient=GL,
        seed=seed,
        attempts=attempts,
        generators=[GL.matrix(g).tolist() for g in H.gens],
        derived_orders=[S.order for S in series],
        center_order=Z.order,
        center_quotient_is_s4=fingerprint(quotient) == fingerprint(symmetric_group(4)),
        quotient_by_minus_one_order=by_minus_one.order,
        second_derived_is_q8=checks["second_derived_is_q8"],
        sylow2_is_c4_wr_c2=checks["sylow2_is_c4_wr_c2"],
        vector_orbits=GL.n_orbits(H),
        dual_orbit_count=len(dual_orbits(GL, H)),
        notes=notes,
    )


@lru_cache(maxsize=4)
def _cached_report(seed: int) -> ComplementReport:
    return find_five_complement(seed)


def complement_report(seed: Optional[int] = None) -> ComplementReport:
    """The search result for ``seed`` (default: the configured seed), cached per seed."""
    return _cached_report(get_config().seed if seed is None else seed)


def five_complement_gl25(seed: Optional[int] = None) -> MatrixGroup:
    """L as a matrix group on GF(5)^2 (cached per seed)."""
    return complement_report(seed).group
