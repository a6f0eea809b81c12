#!/usr/bin/env python3
"""
classbound command line.

    classbound corpus list
    classbound verify --lemma lemma-2 --spec item.json --report out.json
    classbound campaign --suite standard --seed 42 --format json --out report.json
    classbound bounds lemd4 --logW 47 --n 2

The exit code is 0 when no record fails and 1 otherwise.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from classbound import setup_logging
from classbound.gfmod.bounds import check_lemd4_thresholds, corf3_constant_check, theoremC_numeric
from classbound.harness.campaign import RUNNERS, SUITES, CampaignReport, run_campaign
from classbound.harness.corpus import corpus_standard, load_corpus
from classbound.utils.report_exporter import FORMATS, ReportExporter, emit_report

logger = logging.getLogger(__name__)


def _print_summary(report: CampaignReport) -> None:
    for lemma, entry in report.summary.items():
        line = f"{lemma:24s} holds={entry.holds} fails={entry.fails} inconclusive={entry.inconclusive} skips={entry.skips}"
        if entry.min_slack is not None:
            line += f" tightest={entry.tightest} ({entry.min_slack:.4g})"
        print(line)
    for record in report.failures:
        print(f"FAIL {record.lemma} on {record.instance}: {record.lhs} {record.relation} {record.rhs}")
    for skip in report.errors:
        print(f"ERROR {skip.lemma} on {skip.instance}: {skip.reason}")


def _cmd_corpus(args) -> int:
    for item in corpus_standard(args.seed):
        lemmas = ",".join(item.lemmas + (["expected"] if item.expected else []))
        kind = item.group.kind if item.group is not None else "numeric"
        print(f"{item.name:28s} {kind:16s} {lemmas}")
    return 0


def _cmd_verify(args) -> int:
    items = load_corpus(args.spec)
    report = run_campaign(items, suite=args.lemma, seed=args.seed, progress=not args.no_progress)
    if args.report:
        ReportExporter.save(report, args.report)
    _print_summary(report)
    return 0 if report.ok else 1


def _cmd_campaign(args) -> int:
    corpus = load_corpus(args.corpus) if args.corpus else None
    report = run_campaign(corpus, suite=args.suite, seed=args.seed, progress=not args.no_progress)
    if args.out:
        fmt = args.format or os.path.splitext(args.out)[1].lstrip(".").lower() or "json"
        emit_report(report, fmt, args.out)
    else:
        print(ReportExporter.to_json(report) if args.format != "csv" else ReportExporter.to_frame(report).to_csv(index=False))
    _print_summary(report)
    return 0 if report.ok else 1


def _cmd_bounds(args) -> int:
    if args.which == "lemd4":
        records = list(check_lemd4_thresholds(2 ** args.logW, args.n, args.B))
    elif args.which == "theoremC":
        records = [theoremC_numeric(args.n)]
    else:
        records = [corf3_constant_check()]
    print(json.dumps([r.model_dump(mode="json") for r in records], indent=2, sort_keys=True))
    return 0 if all(r.holds for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="classbound", description="Verify class-number bounds on concrete groups")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--no-progress", action="store_true", help="hide progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    corpus = sub.add_parser("corpus", help="inspect the standard corpus")
    corpus.add_argument("action", choices=["list"])
    corpus.add_argument("--seed", type=int, default=None)
    corpus.set_defaults(func=_cmd_corpus)

    verify = sub.add_parser("verify", help="run one lemma on the items of a JSON spec file")
    verify.add_argument("--lemma", required=True, choices=sorted(RUNNERS))
    verify.add_argument("--spec", required=True, help="JSON file with one corpus item or a list")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--report", default=None, help="write the report here (.json or .csv)")
    verify.set_defaults(func=_cmd_verify)

    campaign = sub.add_parser("campaign", help="run a suite over a corpus")
    campaign.add_argument("--suite", default="standard", help=f"one of {sorted(SUITES)} or comma-separated lemma ids")
    campaign.add_argument("--corpus", default=None, help="JSON corpus file (default: the standard corpus)")
    campaign.add_argument("--seed", type=int, default=None)
    campaign.add_argument("--format", choices=FORMATS, default=None, help="default: from the --out extension, else json")
    campaign.add_argument("--out", default=None)
    campaign.set_defaults(func=_cmd_campaign)

    bounds = sub.add_parser("bounds", help="evaluate a numeric bound")
    bounds.add_argument("which", choices=["lemd4", "theoremC", "corf3"])
    bounds.add_argument("--logW", type=int, default=47, help="log2 |W| for lemd4")
    bounds.add_argument("--n", type=int, default=2)
    bounds.add_argument("--B", type=int, default=1, choices=[1, 6])
    bounds.set_defaults(func=_cmd_bounds)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (IOError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
