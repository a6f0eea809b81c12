"""Fixed-class counting and the lemma verifiers built on it."""

from classbound.lemmas.decomposition import ProductDecomposition
from classbound.lemmas.fixed_classes import (
    CosetOrbitSet,
    FixedClassReport,
    coset_conjugation_orbits,
    fixed_class_count,
    fixed_classes,
    fixed_classes_avg_oracle,
    triple_count,
)
from classbound.lemmas.records import LemmaCheckRecord, SkipRecord, make_record
from classbound.lemmas.verifiers import (
    brauer_check_abelian,
    conjugation_invariance_check,
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

__all__ = [
    "CosetOrbitSet",
    "FixedClassReport",
    "LemmaCheckRecord",
    "ProductDecomposition",
    "SkipRecord",
    "brauer_check_abelian",
    "conjugation_invariance_check",
    "coset_conjugation_orbits",
    "fixed_class_count",
    "fixed_classes",
    "fixed_classes_avg_oracle",
    "make_record",
    "triple_count",
    "verify_index_bound",
    "verify_lemma_1_1",
    "verify_lemma_1_2",
    "verify_lemma_2",
    "verify_lemma_b1",
    "verify_lemma_b3",
    "verify_lemma_c1",
    "verify_lemma_c2",
    "verify_maroti",
    "verify_triple_identity",
]
