"""GF(p) linear algebra, matrix groups, affine class counts, the order-96 complement and block modules."""

import math

import numpy as np
import pytest

from classbound.config import Config, set_config
from classbound.core.classes import class_count
from classbound.core.constructions import cyclic_group
from classbound.core.finite_group import FiniteGroup, Subgroup
from classbound.errors import CapExceeded, HypothesisFailed, NotInvariant, NotTransitive, SingularGenerator
from classbound.gfmod.affine import (
    AffineGroup,
    affine_class_count,
    affine_classes,
    class_identify,
    cross_check_classes,
    dual_orbits,
    fixed_classes_affine,
)
from classbound.gfmod.blocks import ModuleDecomposition, induced_block_group, mixed_subgroups
from classbound.gfmod.complement import _pinned
from classbound.gfmod.linalg import (
    GfModule,
    all_vectors,
    block_permutation_matrix,
    det,
    fixed_vector_count,
    mat_inv,
    mat_mul,
    nullspace,
    perm_of_matrix,
    rank,
    restrict_to_subspace,
    span_indices,
    vector_index,
)
from classbound.gfmod.matrix_group import MatrixGroup, general_linear_group, matrix_group
from classbound.gfmod.verifiers import (
    resolve_element,
    theoremC_exclusions,
    verify_affine_cross_check,
    verify_dual_orbit_count,
    verify_lema3,
    verify_lemc4,
    verify_lemd2_instance,
    verify_leme1,
    verify_leme2,
    verify_theoremC_instance,
)
from classbound.harness.corpus import Instance
from classbound.lemmas.module_lemmas import verify_lemma_b2

# ---------------------------------------------------------------------- linear algebra


def test_vector_numbering_is_big_endian():
    assert vector_index([0, 1], 5) == 1
    assert vector_index([1, 0], 5) == 5
    assert all_vectors(2, 2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert GfModule(5, 2).index([3, 4]) == 19
    assert GfModule(3, 3).size == 27


def test_det_rank_inverse():
    A = [[1, 2], [3, 4]]
    assert det(A, 5) == 3
    assert rank(A, 5) == 2
    assert rank([[1, 2], [2, 4]], 5) == 1
    assert np.array_equal(mat_mul(A, mat_inv(A, 5), 5), np.eye(2, dtype=np.int64))


def test_singular_inverse_raises():
    with pytest.raises(SingularGenerator):
        mat_inv([[1, 2], [2, 4]], 5)


def test_nullspace_and_fixed_space():
    basis = nullspace([[1, 2], [2, 4]], 5)
    assert len(basis) == 1
    assert np.all(mat_mul(basis, [[1, 2], [2, 4]], 5) == 0)
    assert fixed_vector_count([[2, 0], [0, 1]], 5) == 5
    assert fixed_vector_count([[1, 1], [0, 1]], 3) == 3


def test_action_is_on_row_vectors():
    A = np.array([[0, 1], [1, 0]])
    images = perm_of_matrix(A, 3)
    assert images[vector_index([1, 2], 3)] == vector_index([2, 1], 3)
    assert np.array_equal(block_permutation_matrix([1, 0], 1), A)


def test_span_and_restriction():
    assert len(span_indices([[1, 0, 0], [0, 1, 0]], 3, 3)) == 9
    A = np.array([[2, 0, 0], [0, 3, 0], [0, 0, 1]])
    restricted = restrict_to_subspace([A], [[1, 0, 0], [0, 1, 0]], 5)
    assert restricted[0].tolist() == [[2, 0], [0, 3]]


# ---------------------------------------------------------------------- matrix groups


@pytest.mark.parametrize("d,p,order", [(2, 3, 48), (2, 5, 480), (1, 7, 6)])
def test_general_linear_orders(d, p, order):
    assert general_linear_group(d, p).order == order


def test_matrix_round_trip():
    G = general_linear_group(2, 5)
    A = [[1, 2], [3, 0]]
    assert G.matrix(G.index_of_matrix(A)).tolist() == A
    assert np.array_equal(G.matrices[G.identity_index], np.eye(2, dtype=np.int64))


def test_matrix_group_validation():
    with pytest.raises(SingularGenerator):
        matrix_group(5, 2, [[[1, 2], [2, 4]]])
    with pytest.raises(ValueError):
        MatrixGroup(4, 2, [])
    with pytest.raises(CapExceeded):
        MatrixGroup(5, 7, [])


def test_vector_and_dual_orbits(minus_identity):
    GL = general_linear_group(2, 5)
    assert GL.n_orbits() == 2
    assert len(dual_orbits(GL)) == 2
    assert minus_identity.n_orbits() == 13
    assert len(dual_orbits(minus_identity)) == 13
    assert minus_identity.is_coprime()
    assert not GL.is_coprime()


def test_dual_orbits_on_a_quotient(minus_identity):
    # covectors vanishing on <e1> are the characters of GF(5)^2 / <e1>
    orbits = dual_orbits(minus_identity, annihilates=[[0, 1]])
    assert sum(orbits.sizes) == 5
    assert len(orbits) == 3
    assert all(ch.value([0, 1]) == 0 for ch in orbits.characters)


# ---------------------------------------------------------------------- affine groups


def _q8(standard_items):
    return Instance(standard_items["Q8-gl25"]).group


@pytest.mark.parametrize(
    "gens,k",
    [
        ([[[4, 0], [0, 4]]], 14),
        ([[[2, 0], [0, 2]]], 10),
        ([[[2, 0], [0, 1]]], 25),
        ([], 25),
    ],
)
def test_affine_class_counts(gens, k):
    G = matrix_group(5, 2, gens)
    GV = AffineGroup(G)
    assert affine_class_count(GV) == k
    assert cross_check_classes(GV) == k


def test_q8_affine_classes(standard_items):
    Q8 = _q8(standard_items)
    assert Q8.order == 8
    assert class_count(Q8.whole) == 5
    assert affine_class_count(AffineGroup(Q8)) == 8


def test_frobenius_twenty():
    F20 = AffineGroup(matrix_group(5, 1, [[[2]]]))
    assert F20.order == 20
    assert affine_class_count(F20) == 5


def test_affine_arithmetic(minus_identity):
    GV = AffineGroup(minus_identity)
    rng = np.random.default_rng(3)
    a, b = rng.choice(GV.members, size=2)
    assert GV.mul(a, GV.inv(a)) == GV.identity
    assert GV.mul(GV.mul(a, b), GV.inv(b)) == a
    assert GV.contains(GV.conj(a, b))


def test_affine_class_identification(minus_identity):
    GV = AffineGroup(minus_identity)
    classes = affine_classes(GV)
    assert classes.method == "structured"
    assert np.array_equal(class_identify(GV, classes.representatives), np.arange(classes.k))
    ids = class_identify(GV, GV.members)
    assert np.array_equal(np.bincount(ids), classes.sizes)


def test_structured_route_needs_coprime():
    GV = AffineGroup(general_linear_group(2, 3))
    with pytest.raises(ValueError):
        affine_classes(GV, "structured")
    assert affine_classes(GV).method == "brute"


def test_brute_force_cap():
    set_config(Config(brute_cap=100))
    with pytest.raises(CapExceeded):
        affine_classes(AffineGroup(general_linear_group(2, 3)), "brute")


def test_subspace_must_be_invariant():
    with pytest.raises(NotInvariant):
        AffineGroup(general_linear_group(2, 5), subspace=[[1, 0]])


def test_inner_element_fixes_every_affine_class(minus_identity):
    GV = AffineGroup(minus_identity)
    g = GV.encode(minus_identity.index_of_matrix([[4, 0], [0, 4]]), 7)
    assert fixed_classes_affine(GV, g) == 14


# ---------------------------------------------------------------------- module verifiers


def test_lema3(minus_identity):
    record = verify_lema3(minus_identity)
    assert record.holds
    assert record.lhs == 13
    assert record.rhs == pytest.approx(math.sqrt(14 * 25 / 2))


def test_lema3_on_general_linear():
    assert verify_lema3(general_linear_group(2, 3)).holds


@pytest.mark.parametrize("gens", [[[[4, 0], [0, 4]]], [[[2, 0], [0, 1]]], [[[2, 0], [0, 2]]], []])
def test_leme1_decomposition(gens):
    G = matrix_group(5, 2, gens)
    records = verify_leme1(G, [[1, 0]], [[0, 1]])
    assert [r.lemma for r in records] == ["leme1", "leme1-vector"]
    assert all(r.holds for r in records)


def test_leme1_needs_a_splitting(minus_identity):
    with pytest.raises(HypothesisFailed):
        verify_leme1(minus_identity, [[1, 0]], [[2, 0]])


def test_cross_check_and_dual_count_records(standard_items):
    Q8 = _q8(standard_items)
    assert verify_affine_cross_check(Q8).holds
    record = verify_dual_orbit_count(Q8)
    assert record.holds
    with pytest.raises(HypothesisFailed):
        verify_dual_orbit_count(general_linear_group(2, 5))
    with pytest.raises(HypothesisFailed):
        verify_affine_cross_check(general_linear_group(2, 3))


def test_excluded_configurations():
    records = theoremC_exclusions()
    assert [r.rhs for r in records] == [25, 25]
    assert all(r.holds for r in records)


# ---------------------------------------------------------------------- the order-96 complement


def test_complement_structure(L_report, L):
    assert L.order == 96
    assert L.is_coprime()
    assert L_report.center_order == 4
    assert L_report.center_quotient_is_s4
    assert L_report.quotient_by_minus_one_order == 48
    assert L_report.derived_orders[:3] == [96, 24, 8]
    assert L_report.vector_orbits == 2
    assert L_report.dual_orbit_count == 2
    assert L_report.notes
    assert L_report.second_derived_is_q8
    assert L_report.sylow2_is_c4_wr_c2


def test_structural_checks_are_recorded(L_report):
    GL = L_report.ambient
    H = Subgroup(GL.perm_image, GL.indices_of_matrices(L_report.group.matrices), name="L")
    checks = _pinned(GL, H)
    assert checks["pinned"]
    assert checks["second_derived_is_q8"] and checks["sylow2_is_c4_wr_c2"]
    q8 = _pinned(GL, checks["series"][2])
    assert q8["series"][0].order == 8
    assert not q8["second_derived_is_q8"]
    assert not q8["sylow2_is_c4_wr_c2"]
    assert not q8["pinned"]


def test_complement_report_dict(L_report):
    data = L_report.to_dict()
    assert data["order"] == 96
    assert data["stated_center_reproduced"] is False
    assert data["seed"] == 42


def test_complement_counts(L):
    assert verify_lema3(L).holds
    assert verify_dual_orbit_count(L).lhs == 2


# ---------------------------------------------------------------------- block modules


@pytest.mark.slow
def test_induced_block_orders(L_diag_c2, L_wr_c2):
    assert L_diag_c2.G.order == 192
    assert L_diag_c2.N.order == 96
    assert L_diag_c2.N0.order == 1
    assert L_diag_c2.J.order == 96
    assert L_wr_c2.G.order == 96 * 96 * 2
    assert L_wr_c2.N.order == 96 * 96
    assert L_wr_c2.N0.order == 96
    assert L_wr_c2.J.order == 1
    assert L_diag_c2.U1.order == L_wr_c2.U1.order == 96
    assert L_diag_c2.block_size == 25 and L_diag_c2.size == 625


def test_block_permutation(L_diag_c2):
    swap = resolve_element(L_diag_c2.G, block_permutation_matrix([1, 0], 2))
    assert L_diag_c2.block_permutation(swap) == (1, 0)
    assert L_diag_c2.block_permutation(L_diag_c2.G.identity_index) == (0, 1)


def test_induced_block_group_validation(L):
    with pytest.raises(ValueError):
        induced_block_group(L, cyclic_group(2), "sideways")
    with pytest.raises(NotTransitive):
        induced_block_group(L, FiniteGroup(2, [], name="1"), "diagonal")


@pytest.mark.slow
def test_mixed_block_group_is_seeded(L):
    a = induced_block_group(L, cyclic_group(2), "mixed", seed=5)
    b = induced_block_group(L, cyclic_group(2), "mixed", seed=5)
    assert a.order == b.order
    assert a.name == b.name
    W, C = mixed_subgroups(L, 5)
    assert C.is_normal_in(W)
    D = ModuleDecomposition(a)
    assert D.N.order == W.order * C.order
    assert a.order == 2 * D.N.order
    assert D.U1.order == W.order


def _kernel_matrices(D):
    return frozenset(m.tobytes() for m in D.G.matrices[D.N.members])


def test_mixed_corpus_items_have_new_kernels(L, standard_items):
    seeds = [item.group.seed for name, item in standard_items.items() if name.startswith("L-mixed")]
    pairs = {(W.key(), C.key()) for W, C in (mixed_subgroups(L, s) for s in seeds)}
    assert len(seeds) == len(pairs) == 6
    assert (L.whole.key(), L.whole.key()) not in pairs
    assert (L.whole.key(), L.perm_image.trivial_subgroup().key()) not in pairs


@pytest.mark.slow
def test_mixed_corpus_items_give_distinct_block_kernels(standard_items, L_wr_c2, L_diag_c2):
    kernels = {_kernel_matrices(L_wr_c2), _kernel_matrices(L_diag_c2)}
    for name, item in standard_items.items():
        if name.startswith("L-mixed"):
            kernels.add(_kernel_matrices(Instance(item).blocks))
    assert len(kernels) == 8


def test_block_count_must_divide_dimension():
    with pytest.raises(ValueError):
        ModuleDecomposition(matrix_group(5, 3, []), n=2)


def test_lemma_b2_needs_transitive_blocks(minus_identity):
    with pytest.raises(NotTransitive):
        verify_lemma_b2(ModuleDecomposition(minus_identity, n=2))


@pytest.mark.slow
def test_block_restriction_and_kernels(L_diag_c2, L_wr_c2):
    assert L_diag_c2.centralizer_V1.order == 1
    assert L_wr_c2.centralizer_V1.order == 96
    assert L_diag_c2.block_kernel_quotient_order() == 96
    assert L_wr_c2.block_kernel_quotient_order() == 96
    swap = resolve_element(L_diag_c2.G, block_permutation_matrix([1, 0], 2))
    assert np.array_equal(L_diag_c2.restrict(swap, 0), np.eye(2, dtype=np.int64))
    g = int(L_diag_c2.N.members[-1])
    assert L_diag_c2.U1.index_of_matrix(L_diag_c2.restrict(g, 1)) >= 0


# ---------------------------------------------------------------------- block lemmas

TWO_BLOCK_ITEMS = ["L-wr-C2", "L-diag-C2", "L48-wr-C2", "L16-wr-C2", "L8-wr-C2"]


@pytest.fixture(scope="module")
def two_block_records(standard_items):
    names = TWO_BLOCK_ITEMS + sorted(name for name in standard_items if name.startswith("L-mixed"))
    records = {}
    for name in names:
        inst = Instance(standard_items[name])
        D, g = inst.blocks, inst.g
        records[name] = {
            "leme2": verify_leme2(D, g, name),
            "lemc4": verify_lemc4(D, g, name),
            "lemd2": verify_lemd2_instance(D, g, instance=name),
        }
        try:
            records[name]["theoremC"] = verify_theoremC_instance(inst.group, instance=name)
        except HypothesisFailed:
            pass
    return records


@pytest.mark.slow
def test_leme2_on_two_block_items(two_block_records):
    leme2 = [r["leme2"] for r in two_block_records.values()]
    assert len(leme2) >= 5
    for record in leme2:
        assert record.holds
        assert record.lhs <= record.extras["floor_bound"] == 117


@pytest.mark.slow
def test_theoremC_on_two_block_items(two_block_records):
    theorem_c = [r["theoremC"] for r in two_block_records.values() if "theoremC" in r]
    assert len(theorem_c) >= 3
    for record in theorem_c:
        assert record.holds
        assert record.lhs <= record.rhs == 625


@pytest.mark.slow
def test_lemc4_and_lemd2_on_two_block_items(two_block_records):
    for name, r in two_block_records.items():
        fixed_record, chain_record = r["lemc4"]
        assert fixed_record.holds and chain_record.holds, name
        assert r["lemd2"].holds, name
        assert fixed_record.lhs == r["lemd2"].lhs == r["leme2"].lhs


@pytest.mark.slow
@pytest.mark.parametrize("name,fixed,k_GV", [("L-wr-C2", 20, 230), ("L-diag-C2", 25, 60)])
def test_block_lemma_values(two_block_records, name, fixed, k_GV):
    r = two_block_records[name]
    assert r["leme2"].lhs == fixed
    assert r["theoremC"].lhs == k_GV


@pytest.mark.slow
def test_lemma_b2_on_induced_modules(L_wr_c2, L_diag_c2):
    for D in (L_wr_c2, L_diag_c2):
        record = verify_lemma_b2(D, instance=D.name)
        assert record.holds
        assert record.lemma == "lemma-b2"


def test_leme2_needs_U1_inside_a_conjugate_of_L():
    # a Singer cycle of order 24 divides |L| but lies in no conjugate of L
    singer = matrix_group(5, 2, [[[0, 1], [3, 4]]], name="C24")
    assert singer.order == 24
    D = ModuleDecomposition(induced_block_group(singer, cyclic_group(2), "diagonal"))
    swap = resolve_element(D.G, block_permutation_matrix([1, 0], 2))
    with pytest.raises(HypothesisFailed):
        verify_leme2(D, swap)
