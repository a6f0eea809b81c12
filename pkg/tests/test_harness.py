"""Corpus, campaigns and report export."""

import json

import pandas as pd
import pytest
from pydantic import ValidationError

from classbound.config import get_config
from classbound.errors import HypothesisFailed
from classbound.harness.campaign import RUNNERS, SUITES, resolve_lemmas, run_campaign, run_lemma, summarize
from classbound.harness.corpus import CorpusItem, Expected, Instance, corpus_standard, load_corpus
from classbound.harness.specs import NamedSpec, PermSpec
from classbound.lemmas.records import make_record
from classbound.utils.report_exporter import CSV_COLUMNS, ReportExporter, emit_report


@pytest.fixture(scope="module")
def small_corpus(standard_items):
    return [standard_items[name] for name in ("S4", "ex0.3a", "minus-I-gl25", "lemd4-2^47", "corf3-constant")]


@pytest.fixture(scope="module")
def small_report(small_corpus):
    return run_campaign(small_corpus, progress=False)


# ---------------------------------------------------------------------- corpus


def test_standard_corpus_names_are_unique(standard_items):
    names = [item.name for item in corpus_standard(42)]
    assert len(names) == len(set(names)) == len(standard_items)


def test_standard_corpus_contents(standard_items):
    for name in ("S3", "S7", "A4", "Q8", "s3wrc2", "F(3,7)", "frobenius-wr-q3p7", "ex0.3a",
                 "L-gl25", "L-wr-C2", "L-diag-C2", "leme2-p5", "theoremC-n3"):
        assert name in standard_items
    assert standard_items["ex0.3a"].expected["fixed"] == Expected(value=4, provenance="STATED")
    assert standard_items["L-gl25"].expected["order"].value == 96
    assert all(lemma in RUNNERS for item in standard_items.values() for lemma in item.lemmas)


def test_mixed_items_follow_the_seed():
    names = lambda seed: sorted(i.name for i in corpus_standard(seed) if i.name.startswith("L-mixed"))
    assert names(42) == names(42)
    assert names(42) != names(7)
    assert len(names(42)) == 6


def test_instance_builds_lazily(ex03a):
    assert ex03a.N.order == 18
    assert ex03a.parent.order == 72
    assert ex03a.decomposition.l == 2


def test_instance_reports_missing_data(standard_items):
    inst = Instance(standard_items["A5"])
    with pytest.raises(HypothesisFailed):
        inst.H
    with pytest.raises(HypothesisFailed):
        inst.decomposition


def test_specs_validate():
    with pytest.raises(ValidationError):
        NamedSpec(family="sporadic")
    item = CorpusItem.model_validate({
        "name": "custom",
        "group": {"kind": "perm", "degree": 3, "generators": ["(0 1)", "(0 1 2)"]},
        "lemmas": ["maroti"],
    })
    assert isinstance(item.group, PermSpec)
    assert item.group.build().order == 6


def test_load_corpus_single_and_list(tmp_path):
    item = {"name": "C5", "group": {"kind": "named", "family": "cyclic", "args": [5]}, "lemmas": ["maroti"]}
    single = tmp_path / "one.json"
    single.write_text(json.dumps(item))
    many = tmp_path / "many.json"
    many.write_text(json.dumps([item, dict(item, name="C5b")]))
    assert [i.name for i in load_corpus(str(single))] == ["C5"]
    assert [i.name for i in load_corpus(str(many))] == ["C5", "C5b"]
    with pytest.raises(IOError):
        load_corpus(str(tmp_path / "missing.json"))


# ---------------------------------------------------------------------- campaigns


def test_resolve_lemmas():
    assert resolve_lemmas("standard") == sorted(RUNNERS)
    assert resolve_lemmas("numeric") == SUITES["numeric"]
    assert resolve_lemmas("lemma-2, maroti") == ["lemma-2", "maroti"]
    with pytest.raises(ValueError):
        resolve_lemmas("lemma-99")


def test_small_campaign_holds(small_report):
    assert small_report.ok
    assert small_report.meta["items"] == 5
    assert small_report.meta["seed"] == 42
    lemmas = {r.lemma for r in small_report.records}
    assert {"lemma-2", "lemma-c2", "triple-oracle", "lema3", "leme1", "lemd4a", "corf3-constant", "expected"} <= lemmas
    keys = [(r.lemma, r.instance) for r in small_report.records]
    assert keys == sorted(keys)


def test_small_campaign_expected_values(small_report):
    expected = {r.instance: r for r in small_report.records if r.lemma == "expected"}
    assert expected["ex0.3a:fixed"].lhs == 4
    assert expected["ex0.3a:fixed"].extras["provenance"] == "STATED"
    assert expected["minus-I-gl25:k(GV)"].lhs == 14
    assert all(r.holds for r in expected.values())


def test_summary_counts(small_report):
    entry = small_report.summary["lemma-2"]
    assert (entry.holds, entry.fails, entry.skips) == (1, 0, 0)
    assert entry.tightest == "ex0.3a"
    assert entry.min_slack == pytest.approx(2 / 6)


def test_summarize_counts_failures_and_skips():
    records = [make_record("x", "a", 1, 2), make_record("x", "b", 3, 2), make_record("x", "c", 3, 2, mode="sampled")]
    summary = summarize(records, [])
    assert (summary["x"].holds, summary["x"].fails, summary["x"].inconclusive) == (1, 1, 1)
    assert summary["x"].tightest == "b"


def test_empty_corpus():
    report = run_campaign([], progress=False)
    assert report.records == [] and report.skips == []
    assert report.ok
    assert report.meta["items"] == 0


@pytest.mark.slow
def test_skips_are_recorded(standard_items):
    items = [
        CorpusItem(name="S2", group=NamedSpec(family="symmetric", args=[2]), lemmas=["maroti"]),
        CorpusItem(name="broken", group=NamedSpec(family="dihedral", args=[2]), lemmas=["maroti"]),
        standard_items["leme2-p3-L"],
    ]
    report = run_campaign(items, progress=False)
    kinds = {s.instance: s.kind for s in report.skips}
    assert kinds == {"S2": "not-applicable", "broken": "error", "leme2-p3-L": "cap-exceeded"}
    assert [s.instance for s in report.errors] == ["broken"]
    assert not report.failures
    assert not report.ok


def test_run_lemma_returns_records_or_skip(ex03a):
    records, skip = run_lemma("lemma-2", ex03a)
    assert skip is None and len(records) == 1
    records, skip = run_lemma("lema3", ex03a)
    assert records == [] and skip is not None


def test_suite_filters_lemmas(small_corpus):
    report = run_campaign(small_corpus, suite="numeric", progress=False)
    assert {r.lemma for r in report.records} == {"lemd4a", "lemd4b", "corf3-constant"}


def test_campaign_restores_config(small_corpus):
    run_campaign(small_corpus[:1], seed=7, progress=False)
    assert get_config().seed == 42


# ---------------------------------------------------------------------- export


def test_json_is_deterministic(small_corpus, small_report):
    again = run_campaign(small_corpus, progress=False)
    assert ReportExporter.to_json(again) == ReportExporter.to_json(small_report)


def test_json_round_trip(tmp_path, small_report):
    path = tmp_path / "out" / "report.json"
    ReportExporter.save(small_report, str(path))
    loaded = ReportExporter.load_json(str(path))
    assert loaded.meta == small_report.meta
    assert len(loaded.records) == len(small_report.records)
    assert json.loads(path.read_text())["summary"]["lemma-2"]["holds"] == 1


def test_csv_columns(tmp_path, small_report):
    path = tmp_path / "report.csv"
    ReportExporter.save(small_report, str(path))
    frame = pd.read_csv(path)
    assert list(frame.columns) == CSV_COLUMNS
    assert len(frame) == len(small_report.records)


def test_unknown_format(tmp_path, small_report):
    with pytest.raises(ValueError):
        ReportExporter.save(small_report, str(tmp_path / "report.xml"))
    with pytest.raises(ValueError):
        ReportExporter.to_json(None)


def test_emit_report(tmp_path, small_report):
    path = emit_report(small_report, "csv", str(tmp_path / "emitted.csv"))
    assert list(pd.read_csv(path).columns) == CSV_COLUMNS
    with pytest.raises(ValueError):
        emit_report(small_report, "parquet", str(tmp_path / "emitted.parquet"))
