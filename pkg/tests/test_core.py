"""Permutation groups: arithmetic, enumeration, classes, quotients and constructions."""

import numpy as np
import pytest
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from classbound.config import Config, set_config
from classbound.core.classes import centralizer, class_count, conjugacy_classes, fingerprint, is_abelian
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
    quaternion_group,
    quotient_group,
    subgroup_from_cycles,
    sylow_subgroup,
    symmetric_group,
    wreath_product,
)
from classbound.core.finite_group import FiniteGroup
from classbound.core.orbits import orbit_labels, orbit_partition
from classbound.core.permutation import Permutation, parse_generators, shift
from classbound.core.subgroups import all_subgroups, cyclic_subgroups, subgroups_for_all
from classbound import errors
from classbound.errors import CapExceeded, ElementNotInGroup, NotNormal


def _sympy_group(G: FiniteGroup) -> PermutationGroup:
    return PermutationGroup([SymPermutation(list(g.images)) for g in G.generators])


# ---------------------------------------------------------------------- permutations


def test_from_cycles_and_cycle_string():
    p = Permutation.from_cycles("(0 1 2)(3 4)", 5)
    assert p.images == (1, 2, 0, 4, 3)
    assert p.cycle_string() == "(0 1 2)(3 4)"
    assert p.order() == 6
    assert Permutation.from_cycles("()", 3).is_identity()
    assert Permutation.from_cycles("(0,2)", 3).images == (2, 1, 0)


def test_product_applies_left_factor_first():
    a = Permutation.from_cycles("(0 1)", 3)
    b = Permutation.from_cycles("(1 2)", 3)
    # 0 -> 1 under a, then 1 -> 2 under b
    assert (a * b).images[0] == 2
    assert (a * b).conjugate(a) == a.inverse() * (a * b) * a


@pytest.mark.parametrize("text", ["(0 0)", "(0 5)"])
def test_bad_cycles_rejected(text):
    with pytest.raises(ValueError):
        Permutation.from_cycles(text, 3)


def test_shift_and_parse_generators():
    p = shift(Permutation.from_cycles("(0 1)", 2), 3, 5)
    assert p.cycle_string() == "(3 4)"
    assert [g.cycle_string() for g in parse_generators(["(0 1)", "(1 2)"], 3)] == ["(0 1)", "(1 2)"]


# ---------------------------------------------------------------------- enumeration


@pytest.mark.parametrize(
    "G,order",
    [
        (symmetric_group(5), 120),
        (alternating_group(6), 360),
        (dihedral_group(6), 12),
        (quaternion_group(), 8),
        (frobenius_group(3, 13), 39),
        (wreath_product(symmetric_group(3), cyclic_group(2)), 72),
        (direct_product(cyclic_group(2), cyclic_group(3)), 6),
    ],
)
def test_orders_match_sympy(G, order):
    assert G.order == order
    assert G.order == _sympy_group(G).order()


def test_mul_matches_permutation_product(s4):
    rng = np.random.default_rng(0)
    a, b = (int(x) for x in rng.integers(0, s4.order, size=2))
    expected = s4.element(a) * s4.element(b)
    assert s4.element(int(s4.mul(a, b))) == expected
    assert s4.element(int(s4.conj(a, b))) == s4.element(a).conjugate(s4.element(b))


def test_index_of_and_contains(s4):
    p = Permutation.from_cycles("(0 1 2 3)", 4)
    assert s4.element(s4.index_of(p)) == p
    assert s4.contains(p)
    a4 = alternating_group(4)
    assert not a4.contains(p)


def test_enumeration_cap():
    set_config(Config(cap=100))
    with pytest.raises(CapExceeded):
        symmetric_group(6).enumerate_elements()


def test_wreath_cap_checked_before_enumeration():
    with pytest.raises(CapExceeded):
        wreath_product(symmetric_group(5), cyclic_group(3), cap=10 ** 6)


# ---------------------------------------------------------------------- classes


@pytest.mark.parametrize(
    "G,k",
    [
        (symmetric_group(3), 3),
        (symmetric_group(4), 5),
        (symmetric_group(5), 7),
        (symmetric_group(6), 11),
        (alternating_group(4), 4),
        (alternating_group(5), 5),
        (dihedral_group(4), 5),
        (dihedral_group(5), 4),
        (quaternion_group(), 5),
        (cyclic_group(6), 6),
        (frobenius_group(3, 7), 5),
        (frobenius_group(3, 13), 7),
        (wreath_product(symmetric_group(3), cyclic_group(2)), 9),
    ],
)
def test_class_counts(G, k):
    assert class_count(G) == k
    assert k == len(_sympy_group(G).conjugacy_classes())


def test_class_sizes_sum_to_order(s4):
    classes = conjugacy_classes(s4)
    assert classes.sizes.sum() == 24
    assert sorted(classes.sizes.tolist()) == [1, 3, 6, 6, 8]
    assert np.array_equal(classes.class_of(classes.representatives), np.arange(classes.k))


def test_class_of_rejects_outsiders(s4):
    a4 = s4.subgroup(parse_generators(["(0 1 2)", "(1 2 3)"], 4))
    classes = conjugacy_classes(a4)
    with pytest.raises(ElementNotInGroup):
        classes.class_of([s4.index_of(Permutation.from_cycles("(0 1)", 4))])


def test_centralizer(s4):
    x = Permutation.from_cycles("(0 1)(2 3)", 4)
    assert centralizer(s4, x).order == 8
    with pytest.raises(ElementNotInGroup):
        centralizer(alternating_group(4), Permutation.from_cycles("(0 1)", 4))


def test_is_abelian(q8, c6):
    assert is_abelian(c6)
    assert not is_abelian(q8)


# ---------------------------------------------------------------------- subgroups and quotients


@pytest.mark.parametrize(
    "G,count",
    [
        (symmetric_group(3), 6),
        (symmetric_group(4), 30),
        (alternating_group(4), 10),
        (dihedral_group(4), 10),
        (quaternion_group(), 6),
    ],
)
def test_subgroup_lattice_sizes(G, count):
    assert len(all_subgroups(G)) == count


def test_cyclic_subgroups_of_q8(q8):
    assert sorted(S.order for S in cyclic_subgroups(q8)) == [1, 2, 4, 4, 4]


def test_subgroups_for_all_flags_sampling():
    subgroups, exhaustive = subgroups_for_all(symmetric_group(4))
    assert exhaustive and len(subgroups) == 30
    subgroups, exhaustive = subgroups_for_all(symmetric_group(5), seed=1)
    assert not exhaustive
    assert any(S.order == 120 for S in subgroups)


def test_quotient_by_normal_subgroup(s4):
    V4 = subgroup_from_cycles(s4, ["(0 1)(2 3)", "(0 2)(1 3)"], name="V4")
    Q, projection = quotient_group(s4, V4)
    assert Q.order == 6
    assert fingerprint(Q) == fingerprint(symmetric_group(3))
    assert len(np.unique(projection[s4.whole.members])) == 6


def test_is_normal_against_the_parent(s4):
    A4 = subgroup_from_cycles(s4, ["(0 1 2)", "(1 2 3)"])
    assert A4.order == 12
    assert A4.is_normal
    assert not subgroup_from_cycles(s4, ["(0 1)"]).is_normal
    assert s4.whole.is_normal and s4.trivial_subgroup().is_normal
    S3 = subgroup_from_cycles(s4, ["(0 1)", "(0 1 2)"])
    assert subgroup_from_cycles(s4, ["(0 1 2)"]).is_normal_in(S3)


def test_quotient_rejects_non_normal(s4):
    H = subgroup_from_cycles(s4, ["(0 1)"])
    with pytest.raises(NotNormal):
        quotient_group(s4, H)


def test_core_center_and_derived(s4, q8):
    stabilizer = subgroup_from_cycles(s4, ["(1 2)", "(1 2 3)"])
    assert core_of(s4, stabilizer).order == 1
    assert center(q8).order == 2
    assert derived_subgroup(s4).order == 12
    assert [S.order for S in derived_series(s4)] == [24, 12, 4, 1]


def test_sylow_and_subnormal(s4):
    P = sylow_subgroup(s4, 2)
    assert P.order == 8
    V4 = subgroup_from_cycles(s4, ["(0 1)(2 3)", "(0 2)(1 3)"])
    assert is_subnormal(V4, s4)
    C2 = subgroup_from_cycles(s4, ["(0 1)(2 3)"])
    assert is_subnormal(C2, s4)
    assert not is_subnormal(subgroup_from_cycles(s4, ["(0 1)"]), s4)


def test_orbit_partition():
    maps = [np.array([1, 2, 0, 3, 5, 4])]
    reps, labels, sizes = orbit_partition(orbit_labels(6, maps))
    assert reps.tolist() == [0, 3, 4]
    assert sizes.tolist() == [3, 1, 2]
    assert labels.tolist() == [0, 0, 0, 1, 2, 2]


@pytest.mark.parametrize("name", ["CapExceeded", "SearchFailed", "ModeDowngraded", "ClassMismatch"])
def test_runtime_errors(name):
    cls = getattr(errors, name)
    assert issubclass(cls, errors.ClassboundError) and issubclass(cls, RuntimeError)


@pytest.mark.parametrize(
    "name",
    ["ElementNotInGroup", "NotASubgroup", "NotNormal", "NotInvariant", "NotTransitive",
     "ExcludedDegree", "NotAbelian", "SingularGenerator", "HypothesisFailed"],
)
def test_input_errors_are_value_errors(name):
    cls = getattr(errors, name)
    assert issubclass(cls, errors.ClassboundError) and issubclass(cls, ValueError)
