"""Fixed-class counts and the permutation-group lemma verifiers."""

import pytest

from classbound.core.classes import class_count, conjugacy_classes
from classbound.core.constructions import (
    alternating_group,
    center,
    cyclic_group,
    derived_subgroup,
    dihedral_group,
    frobenius_group,
    normal_closure,
    quaternion_group,
    subgroup_from_cycles,
    symmetric_group,
    wreath_product,
)
from classbound.core.permutation import Permutation
from classbound.core.subgroups import cyclic_subgroups, subgroup_sample
from classbound.errors import CapExceeded, ExcludedDegree, NotAbelian, NotASubgroup, NotInvariant, NotNormal
from classbound.gfmod.linalg import GfModule
from classbound.harness.corpus import Instance
from classbound.lemmas import (
    ProductDecomposition,
    brauer_check_abelian,
    conjugation_invariance_check,
    coset_conjugation_orbits,
    fixed_class_count,
    fixed_classes,
    fixed_classes_avg_oracle,
    make_record,
    triple_count,
    verify_index_bound,
    verify_lemma_1_1,
    verify_lemma_1_2,
    verify_lemma_2,
    verify_lemma_b1,
    verify_lemma_b3,
    verify_lemma_c1,
    verify_lemma_c2,
    verify_maroti,
    verify_triple_identity,
)


def _normal_pairs():
    """(label, N, g) over characteristic subgroups N and class representatives g."""
    groups = [
        symmetric_group(4),
        alternating_group(4),
        dihedral_group(4),
        dihedral_group(6),
        quaternion_group(),
        frobenius_group(3, 7),
        wreath_product(symmetric_group(3), cyclic_group(2)),
    ]
    pairs = []
    for G in groups:
        candidates = {}
        for N in (G.whole, derived_subgroup(G), center(G)):
            candidates[N.key()] = N
        for N in candidates.values():
            for g in conjugacy_classes(G).representatives:
                pairs.append((f"{G.name}:{N.order}:{int(g)}", N, int(g)))
    return pairs


PAIRS = _normal_pairs()


def test_enough_pairs():
    assert len(PAIRS) >= 50


@pytest.mark.parametrize("label,N,g", PAIRS, ids=[p[0] for p in PAIRS])
def test_three_fixed_class_routes_agree(label, N, g):
    counts = triple_count(N, g)
    assert counts["direct"] == counts["averaging"] == counts["coset_orbits"]
    assert 1 <= counts["direct"] <= class_count(N)


def test_inner_elements_fix_every_class(s4):
    N = derived_subgroup(s4)
    for g in N.members[:5]:
        assert fixed_class_count(N, int(g)) == class_count(N)


def test_fixed_classes_report(s4):
    A4 = derived_subgroup(s4)
    report = fixed_classes(A4, Permutation.from_cycles("(0 1)", 4))
    # the transposition swaps the two classes of 3-cycles
    assert report.count == 2
    assert report.method == "direct"
    assert len(report.fixed_class_ids) == 2


def test_not_invariant(s3):
    N = subgroup_from_cycles(s3, ["(0 1)"])
    with pytest.raises(NotInvariant):
        fixed_class_count(N, Permutation.from_cycles("(0 1 2)", 3))
    with pytest.raises(NotInvariant):
        coset_conjugation_orbits(N, Permutation.from_cycles("(0 1 2)", 3))


def test_averaging_oracle_limit(s4):
    with pytest.raises(CapExceeded):
        fixed_classes_avg_oracle(s4.whole, 0, limit=10)


def test_coset_orbits_partition_the_coset(f37):
    N = subgroup_from_cycles(f37, ["(0 1 2 3 4 5 6)"])
    orbits = coset_conjugation_orbits(N, f37.generator_indices[1])
    assert orbits.sizes.sum() == 7
    assert sum(len(o) for o in orbits.orbits) == 7


# ---------------------------------------------------------------------- product lemmas


def test_worked_wreath_instance(ex03a):
    assert class_count(ex03a.N) == 6
    assert fixed_class_count(ex03a.N, ex03a.g) == 4
    record = verify_lemma_2(ex03a.decomposition)
    assert record.holds
    assert (record.lhs, record.rhs) == (4, 6)


def test_lemma_c2_on_worked_instance(ex03a):
    record = verify_lemma_c2(ex03a.decomposition)
    assert record.holds
    assert record.rhs == 6
    assert record.extras["k(J)"] == 2
    assert record.extras["k(N0)"] == 3
    assert record.extras["N1_direct"]


def test_lemma_1_2_on_worked_instance(ex03a):
    record_a, record_b = verify_lemma_1_2(ex03a.decomposition)
    assert record_a.holds and record_a.lhs == 18
    assert record_a.extras["grouped"]
    assert record_b.holds
    assert record_b.lhs == 4


@pytest.mark.parametrize("q,p", [(2, 3), (2, 5), (2, 7), (3, 7), (3, 13)])
def test_frobenius_wreath_fixed_counts(standard_items, q, p):
    inst = Instance(standard_items[f"frobenius-wr-q{q}p{p}"])
    expected = p + 1 if q == 2 else 1 + (p - 1) // q + q - 1
    assert fixed_class_count(inst.N, inst.g) == expected
    assert verify_lemma_2(inst.decomposition).holds
    assert verify_lemma_c2(inst.decomposition).holds


@pytest.mark.slow
@pytest.mark.parametrize("q,p", [(2, 7), (3, 7)])
def test_lemma_1_2_bound_on_sampled_frobenius_wreaths(standard_items, q, p):
    inst = Instance(standard_items[f"frobenius-wr-q{q}p{p}"])
    _, record_b = verify_lemma_1_2(inst.decomposition, inst.name)
    assert record_b.mode == "sampled"
    assert record_b.lhs == fixed_class_count(inst.N, inst.g)
    assert record_b.holds and record_b.status == "holds"
    assert record_b.extras["k_i"] == [record_b.rhs]


def test_decomposition_rejects_noncommuting_factors(s4):
    A = subgroup_from_cycles(s4, ["(0 1)"])
    B = subgroup_from_cycles(s4, ["(1 2)"])
    with pytest.raises(NotASubgroup):
        ProductDecomposition(s4, [A, B], 0, s4.trivial_subgroup())


def test_decomposition_components(ex03a):
    D = ex03a.decomposition
    comps = D.components(D.N.members)
    assert comps.shape == (18, 2)
    assert D.factor_permutation == (1, 0)
    assert D.is_transitive()
    assert D.L.order == 6


# ---------------------------------------------------------------------- class-number bounds


def _lemma_1_1_pairs():
    """(label, G, N) over the normal closures of class representatives and the usual characteristic subgroups."""
    groups = [
        symmetric_group(3),
        symmetric_group(4),
        alternating_group(4),
        dihedral_group(4),
        dihedral_group(6),
        quaternion_group(),
        cyclic_group(6),
        frobenius_group(3, 7),
        wreath_product(symmetric_group(3), cyclic_group(2)),
    ]
    pairs = []
    for G in groups:
        candidates = {}
        for N in [G.trivial_subgroup(), G.whole, derived_subgroup(G), center(G)]:
            candidates.setdefault(N.key(), N)
        for g in conjugacy_classes(G).representatives:
            N = normal_closure(G, [int(g)])
            candidates.setdefault(N.key(), N)
        for i, N in enumerate(candidates.values()):
            pairs.append((f"{G.name}:{N.order}:{i}", G, N))
    return pairs


LEMMA_1_1_PAIRS = _lemma_1_1_pairs()


def test_enough_lemma_1_1_pairs():
    assert len(LEMMA_1_1_PAIRS) >= 30


@pytest.mark.parametrize("label,G,N", LEMMA_1_1_PAIRS, ids=[p[0] for p in LEMMA_1_1_PAIRS])
def test_lemma_1_1_over_normal_pairs(label, G, N):
    record = verify_lemma_1_1(G, N, label)
    assert record.holds
    assert record.lhs == record.rhs == class_count(G)
    assert record.extras["middle_sum"] <= record.extras["fixed_sum"]


def test_lemma_1_1(s4):
    record = verify_lemma_1_1(s4, derived_subgroup(s4))
    assert record.holds
    assert record.lhs == 5
    assert record.extras["middle_sum"] <= record.extras["fixed_sum"]


def test_lemma_1_1_needs_normal(s4):
    with pytest.raises(NotNormal):
        verify_lemma_1_1(s4, subgroup_from_cycles(s4, ["(0 1)"]))


def test_lemma_b1(s4):
    H = subgroup_from_cycles(s4, ["(1 2)", "(1 2 3)"])
    record = verify_lemma_b1(s4, H)
    assert record.holds
    assert record.extras["|N|"] == 1


def test_lemma_b3_and_index_bound(s3_wr_c2):
    base = subgroup_from_cycles(s3_wr_c2, ["(0 1)", "(0 1 2)", "(3 4)", "(3 4 5)"])
    assert verify_lemma_b3(s3_wr_c2, base).holds
    record = verify_index_bound(s3_wr_c2, base)
    assert record.holds
    assert (record.lhs, record.rhs) == (9, 18)


def test_lemma_c1(s4):
    A4 = derived_subgroup(s4)
    V4 = subgroup_from_cycles(s4, ["(0 1)(2 3)", "(0 2)(1 3)"])
    record = verify_lemma_c1(s4, A4, V4, Permutation.from_cycles("(0 1 2)", 4))
    assert record.holds
    assert record.lhs == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_maroti_on_symmetric_groups(n):
    assert verify_maroti(symmetric_group(n)).holds


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_maroti_over_subgroups_of_symmetric_groups(n):
    G = symmetric_group(n)
    subgroups = cyclic_subgroups(G) + subgroup_sample(G, "random-k-generated", seed=n, count=100)
    assert len(subgroups) > 100
    failing = [U.name for U in subgroups if not verify_maroti(U, n).holds]
    assert failing == []


def test_maroti_excludes_degree_two():
    with pytest.raises(ExcludedDegree):
        verify_maroti(symmetric_group(2))


def test_brauer_abelian_permutation(d8):
    rotations = subgroup_from_cycles(d8, ["(0 1 2 3)"])
    record = brauer_check_abelian(rotations, Permutation.from_cycles("(1 3)", 4))
    assert record.holds
    assert record.lhs == 2


def test_brauer_abelian_rejects_nonabelian(s3):
    with pytest.raises(NotAbelian):
        brauer_check_abelian(s3.whole, 0)


def test_brauer_abelian_module():
    record = brauer_check_abelian(GfModule(5, 2), [[4, 0], [0, 4]])
    assert record.holds
    assert record.lhs == 1
    record = brauer_check_abelian(GfModule(3, 2), [[1, 1], [0, 1]])
    assert record.holds
    assert record.lhs == 3


def test_triple_identity_record(ex03a):
    record = verify_triple_identity(ex03a.N, ex03a.g)
    assert record.holds
    assert record.extras == {"direct": 4, "averaging": 4, "coset_orbits": 4}


def test_conjugation_invariance(s4):
    A4 = derived_subgroup(s4)
    record = conjugation_invariance_check(A4, Permutation.from_cycles("(0 1)", 4), s4)
    assert record.holds
    assert record.extras["fixed"] == 2


# ---------------------------------------------------------------------- records


def test_make_record_integer_and_float():
    assert make_record("x", "i", 3, 3).holds
    assert not make_record("x", "i", 4, 3).holds
    assert make_record("x", "i", 1.0 + 1e-12, 1.0, relation="==").holds
    record = make_record("x", "i", 2, 5)
    assert record.slack == 3
    assert record.status == "holds"


def test_sampled_failure_is_inconclusive():
    record = make_record("x", "i", 5, 3, mode="sampled")
    assert not record.holds
    assert record.inconclusive
    assert record.status == "inconclusive"
    assert make_record("x", "i", 5, 3).status == "fails"
