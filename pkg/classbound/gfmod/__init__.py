"""GF(p) modules: matrix groups, affine groups G⋉V, block decompositions and bound evaluators."""

from classbound.gfmod.affine import (
    AffineClassSet,
    AffineGroup,
    DualCharacter,
    affine_class_count,
    affine_classes,
    affine_semidirect,
    class_identify,
    cross_check_classes,
    dual_orbits,
    fixed_classes_affine,
)
from classbound.gfmod.blocks import ModuleDecomposition, induced_block_group
from classbound.gfmod.bounds import (
    BoundFunction,
    BoundParams,
    check_lemd4_thresholds,
    corf3_constant_check,
    eval_lemd2_bounds,
    eval_noncoprime_bounds,
    lemd4b_hypothesis_rhs,
    theoremC_numeric,
)
from classbound.gfmod.complement import ComplementReport, complement_report, five_complement_gl25
from classbound.gfmod.linalg import GfModule, restrict_to_subspace
from classbound.gfmod.matrix_group import MatrixGroup, general_linear_group, matrix_group
from classbound.gfmod.verifiers import (
    theoremC_exclusions,
    verify_affine_cross_check,
    verify_dual_orbit_count,
    verify_lema3,
    verify_lemc4,
    verify_lemd2_instance,
    verify_leme1,
    verify_leme2,
    verify_leme2_bound,
    verify_theoremC_instance,
)

__all__ = [
    "AffineClassSet",
    "AffineGroup",
    "BoundFunction",
    "BoundParams",
    "ComplementReport",
    "DualCharacter",
    "GfModule",
    "MatrixGroup",
    "ModuleDecomposition",
    "affine_class_count",
    "affine_classes",
    "affine_semidirect",
    "check_lemd4_thresholds",
    "class_identify",
    "complement_report",
    "corf3_constant_check",
    "cross_check_classes",
    "dual_orbits",
    "eval_lemd2_bounds",
    "eval_noncoprime_bounds",
    "five_complement_gl25",
    "fixed_classes_affine",
    "general_linear_group",
    "induced_block_group",
    "lemd4b_hypothesis_rhs",
    "matrix_group",
    "restrict_to_subspace",
    "theoremC_exclusions",
    "theoremC_numeric",
    "verify_affine_cross_check",
    "verify_dual_orbit_count",
    "verify_lema3",
    "verify_lemc4",
    "verify_lemd2_instance",
    "verify_leme1",
    "verify_leme2",
    "verify_leme2_bound",
    "verify_theoremC_instance",
]
