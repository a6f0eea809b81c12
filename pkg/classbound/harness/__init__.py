"""Instance corpus, group specs and verification campaigns."""

from classbound.harness.campaign import RUNNERS, SUITES, CampaignReport, LemmaSummary, run_campaign, run_lemma
from classbound.harness.corpus import CorpusItem, Expected, Instance, corpus_standard, load_corpus

__all__ = [
    "RUNNERS",
    "SUITES",
    "CampaignReport",
    "CorpusItem",
    "Expected",
    "Instance",
    "LemmaSummary",
    "corpus_standard",
    "load_corpus",
    "run_campaign",
    "run_lemma",
]
