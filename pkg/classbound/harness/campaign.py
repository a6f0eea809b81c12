"""
Verification campaigns.

Runs every requested lemma on every corpus item, turning each error into a
:class:`SkipRecord` so that one bad instance never stops the campaign.
"""

import logging
from dataclasses import replace
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from classbound import __version__
from classbound.config import get_config, set_config
from classbound.core.classes import class_count
from classbound.core.constructions import center
from classbound.errors import (
    CapExceeded,
    ElementNotInGroup,
    ExcludedDegree,
    HypothesisFailed,
    NotAbelian,
    NotASubgroup,
    NotInvariant,
    NotNormal,
    NotTransitive,
)
from classbound.gfmod.affine import AffineGroup, affine_class_count, dual_orbits
from classbound.gfmod.bounds import (
    BoundParams,
    check_lemd4_thresholds,
    corf3_constant_check,
    eval_noncoprime_bounds,
    theoremC_numeric,
)
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
from classbound.harness.corpus import CorpusItem, Instance, corpus_standard
from classbound.lemmas.fixed_classes import fixed_class_count
from classbound.lemmas.module_lemmas import verify_lemma_b2
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

logger = logging.getLogger(__name__)

Runner = Callable[[Instance], List[LemmaCheckRecord]]

NOT_APPLICABLE = (
    HypothesisFailed,
    NotTransitive,
    NotNormal,
    NotInvariant,
    NotAbelian,
    NotASubgroup,
    ExcludedDegree,
    ElementNotInGroup,
)


def _noncoprime(inst: Instance) -> List[LemmaCheckRecord]:
    spec = inst.params["noncoprime"]
    bound = dict(spec.get("bound", {}))
    if inst.item.group is not None and "group_order" not in bound:
        bound["group_order"] = inst.group.order
    return [eval_noncoprime_bounds(BoundParams(**bound), spec["which"], instance=inst.name)]


def _leme2_bound(inst: Instance) -> List[LemmaCheckRecord]:
    generators = list(inst.group.generators) if inst.item.group is not None else None
    return [verify_leme2_bound(inst.params["p"], generators, instance=inst.name)]


QUANTITIES: Dict[str, Callable[[Instance], Any]] = {
    "order": lambda i: i.group.order,
    "k": lambda i: class_count(i.whole),
    "k(N)": lambda i: class_count(i.N),
    "fixed": lambda i: fixed_class_count(i.N, i.g),
    "lem2-bound": lambda i: i.decomposition.L.order,
    "vector-orbits": lambda i: i.group.n_orbits(),
    "dual-orbits": lambda i: len(dual_orbits(i.group)),
    "k(GV)": lambda i: affine_class_count(AffineGroup(i.group)),
    "center-order": lambda i: center(i.whole).order,
}


def check_expected(inst: Instance) -> List[LemmaCheckRecord]:
    """One equality record per expected quantity of the item."""
    records = []
    for key, expected in sorted(inst.item.expected.items()):
        if key not in QUANTITIES:
            raise ValueError(f"Unknown expected quantity {key!r}; expected one of {sorted(QUANTITIES)}")
        records.append(make_record(
            "expected", f"{inst.name}:{key}", QUANTITIES[key](inst), expected.value,
            relation="==", extras={"provenance": expected.provenance},
        ))
    return records


RUNNERS: Dict[str, Runner] = {
    "lemma-1.1": lambda i: [verify_lemma_1_1(i.whole, i.N, i.name)],
    "lemma-1.2": lambda i: list(verify_lemma_1_2(i.decomposition, i.name)),
    "lemma-2": lambda i: [verify_lemma_2(i.decomposition, i.name)],
    "lemma-c2": lambda i: [verify_lemma_c2(i.decomposition, i.name)],
    "lemma-b1": lambda i: [verify_lemma_b1(i.whole, i.H, i.name)],
    "lemma-b3": lambda i: [verify_lemma_b3(i.whole, i.N, i.name)],
    "lemma-c1": lambda i: [verify_lemma_c1(i.whole, i.whole, i.N, i.g, i.name)],
    "maroti": lambda i: [verify_maroti(i.whole, instance=i.name)],
    "index-bound": lambda i: [verify_index_bound(i.whole, i.N, i.name)],
    "brauer-abelian": lambda i: [brauer_check_abelian(i.N, i.g, i.name)],
    "brauer-module": lambda i: [brauer_check_abelian(i.group.module, i.group.matrix(i.g), i.name)],
    "brauer-dual": lambda i: [verify_dual_orbit_count(i.group, instance=i.name)],
    "triple-oracle": lambda i: [verify_triple_identity(i.N, i.g, i.name)],
    "conjugation-invariance": lambda i: [conjugation_invariance_check(i.N, i.g, i.whole, instance=i.name)],
    "lema3": lambda i: [verify_lema3(i.group, instance=i.name)],
    "leme1": lambda i: verify_leme1(i.group, *i.subspaces(), instance=i.name),
    "affine-cross-check": lambda i: [verify_affine_cross_check(i.group, instance=i.name)],
    "leme2": lambda i: [verify_leme2(i.blocks, i.g, i.name)],
    "leme2-bound": _leme2_bound,
    "lemc4": lambda i: verify_lemc4(i.blocks, i.g, i.name),
    "lemd2": lambda i: [verify_lemd2_instance(i.blocks, i.g, instance=i.name)],
    "theoremC": lambda i: [verify_theoremC_instance(i.group, instance=i.name)],
    "lemma-b2": lambda i: [verify_lemma_b2(i.blocks, instance=i.name)],
    "theoremC-excluded": lambda i: theoremC_exclusions(),
    "theoremC-numeric": lambda i: [theoremC_numeric(i.params["n"])],
    "lemd4": lambda i: list(check_lemd4_thresholds(2 ** i.params["logW"], i.params.get("n", 2), i.params.get("B", 1))),
    "corf3-constant": lambda i: [corf3_constant_check()],
    "noncoprime": _noncoprime,
    "expected": check_expected,
}

SUITES: Dict[str, Optional[List[str]]] = {
    "standard": None,
    "permutation": [
        "lemma-1.1", "lemma-1.2", "lemma-2", "lemma-c2", "lemma-b1", "lemma-b3", "lemma-c1",
        "maroti", "index-bound", "brauer-abelian", "triple-oracle", "conjugation-invariance", "expected",
    ],
    "module": [
        "lema3", "leme1", "affine-cross-check", "brauer-module", "brauer-dual", "leme2", "leme2-bound",
        "lemc4", "lemd2", "theoremC", "lemma-b2", "expected",
    ],
    "numeric": ["theoremC-excluded", "theoremC-numeric", "lemd4", "corf3-constant", "noncoprime", "leme2-bound"],
}


class LemmaSummary(BaseModel):
    """Outcome counts for one lemma id and its tightest instance."""
    holds: int = 0
    fails: int = 0
    inconclusive: int = 0
    skips: int = 0
    min_slack: Optional[float] = None
    tightest: Optional[str] = None


class CampaignReport(BaseModel):
    meta: Dict[str, Any] = Field(default_factory=dict)
    records: List[LemmaCheckRecord] = Field(default_factory=list)
    skips: List[SkipRecord] = Field(default_factory=list)
    summary: Dict[str, LemmaSummary] = Field(default_factory=dict)

    @property
    def failures(self) -> List[LemmaCheckRecord]:
        return [r for r in self.records if r.status == "fails"]

    @property
    def errors(self) -> List[SkipRecord]:
        return [s for s in self.skips if s.kind == "error"]

    @property
    def ok(self) -> bool:
        """No record fails and no lemma crashed."""
        return not self.failures and not self.errors


def resolve_lemmas(suite: str) -> List[str]:
    """Lemma ids of a named suite, or a comma-separated list of ids."""
    if suite in SUITES:
        chosen = SUITES[suite]
        return sorted(RUNNERS) if chosen is None else list(chosen)
    lemmas = [s.strip() for s in suite.split(",") if s.strip()]
    unknown = [s for s in lemmas if s not in RUNNERS]
    if unknown:
        error_msg = f"Unknown lemma ids {unknown}; expected a suite {sorted(SUITES)} or ids from {sorted(RUNNERS)}"
        logger.error(error_msg)
        raise ValueError(error_msg)
    return lemmas


def run_lemma(lemma: str, inst: Instance) -> Tuple[List[LemmaCheckRecord], Optional[SkipRecord]]:
    """Run one lemma on one instance.

    Returns:
        ``(records, skip)`` with exactly one of them non-empty.
    """
    try:
        return RUNNERS[lemma](inst), None
    except CapExceeded as e:
        logger.warning(f"{lemma} on {inst.name}: cap exceeded: {e}")
        return [], SkipRecord(lemma=lemma, instance=inst.name, kind="cap-exceeded", reason=str(e))
    except NOT_APPLICABLE as e:
        logger.info(f"{lemma} on {inst.name}: not applicable: {e}")
        return [], SkipRecord(lemma=lemma, instance=inst.name, kind="not-applicable", reason=f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.error(f"{lemma} on {inst.name} raised {type(e).__name__}: {e}")
        return [], SkipRecord(lemma=lemma, instance=inst.name, kind="error", reason=f"{type(e).__name__}: {e}")


def summarize(records: Iterable[LemmaCheckRecord], skips: Iterable[SkipRecord]) -> Dict[str, LemmaSummary]:
    summary: Dict[str, LemmaSummary] = {}
    for r in records:
        entry = summary.setdefault(r.lemma, LemmaSummary())
        if r.status == "holds":
            entry.holds += 1
        elif r.status == "inconclusive":
            entry.inconclusive += 1
        else:
            entry.fails += 1
        if r.relation == "<=":
            relative = float(r.slack) / max(1.0, abs(float(r.rhs)))
            if entry.min_slack is None or relative < entry.min_slack:
                entry.min_slack, entry.tightest = relative, r.instance
    for s in skips:
        summary.setdefault(s.lemma, LemmaSummary()).skips += 1
    return dict(sorted(summary.items()))


def run_campaign(
    corpus: Optional[List[CorpusItem]] = None,
    suite: str = "standard",
    seed: Optional[int] = None,
    progress: bool = True,
) -> CampaignReport:
    """Run the lemmas of ``suite`` over the corpus (default: the standard corpus).

    Records are ordered by (lemma, instance), keeping generation order within
    an instance, so equal seeds give identical reports.
    """
    lemmas = resolve_lemmas(suite)
    saved = get_config()
    if seed is not None and seed != saved.seed:
        set_config(replace(saved, seed=seed))
    try:
        seed = get_config().seed
        corpus = corpus_standard(seed) if corpus is None else corpus
        records: List[LemmaCheckRecord] = []
        skips: List[SkipRecord] = []
        for item in tqdm(corpus, desc="Campaign", unit="instance", disable=not progress):
            inst = Instance(item)
            todo = [lemma for lemma in item.lemmas if lemma in lemmas]
            if item.expected and "expected" in lemmas:
                todo.append("expected")
            for lemma in todo:
                if lemma not in RUNNERS:
                    skips.append(SkipRecord(lemma=lemma, instance=item.name, kind="error", reason="unknown lemma id"))
                    continue
                found, skip = run_lemma(lemma, inst)
                records.extend(found)
                if skip is not None:
                    skips.append(skip)
    finally:
        set_config(saved)

    records.sort(key=lambda r: (r.lemma, r.instance))
    skips.sort(key=lambda s: (s.lemma, s.instance))
    report = CampaignReport(
        meta={"seed": seed, "version": __version__, "suite": suite, "items": len(corpus)},
        records=records,
        skips=skips,
        summary=summarize(records, skips),
    )
    failures, errors = len(report.failures), len(report.errors)
    logger.info(f"Campaign done: {len(records)} records, {len(skips)} skips, {failures} failures, {errors} errors")
    return report
