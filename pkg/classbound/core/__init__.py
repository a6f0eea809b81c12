"""Permutation-group arithmetic: enumeration, classes, quotients, wreath products."""

from classbound.core.classes import (
    ClassSet,
    GroupFingerprint,
    centralizer,
    centralizer_order,
    class_count,
    conjugacy_classes,
    fingerprint,
    is_abelian,
)
from classbound.core.constructions import (
    alternating_group,
    center,
    core_of,
    cyclic_group,
    derived_series,
    derived_subgroup,
    dihedral_group,
    direct_product,
    frobenius_group,
    is_subnormal,
    normal_closure,
    quaternion_group,
    quotient_group,
    sylow_subgroup,
    symmetric_group,
    wreath_product,
)
from classbound.core.finite_group import FiniteGroup, Subgroup, as_subgroup
from classbound.core.permutation import Permutation
from classbound.core.subgroups import all_subgroups, cyclic_subgroups, subgroup_sample


def enumerate_elements(G: FiniteGroup):
    """Enumerate G (cached on the group)."""
    return G.enumerate_elements()


__all__ = [
    "ClassSet",
    "FiniteGroup",
    "GroupFingerprint",
    "Permutation",
    "Subgroup",
    "all_subgroups",
    "alternating_group",
    "as_subgroup",
    "center",
    "centralizer",
    "centralizer_order",
    "class_count",
    "conjugacy_classes",
    "core_of",
    "cyclic_group",
    "cyclic_subgroups",
    "derived_series",
    "derived_subgroup",
    "dihedral_group",
    "direct_product",
    "enumerate_elements",
    "fingerprint",
    "frobenius_group",
    "is_abelian",
    "is_subnormal",
    "normal_closure",
    "quaternion_group",
    "quotient_group",
    "subgroup_sample",
    "sylow_subgroup",
    "symmetric_group",
    "wreath_product",
]
