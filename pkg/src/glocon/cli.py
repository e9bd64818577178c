"""Command-line front end.

Subcommands::

    glocon validate <corpus> [--config FILE] [--format text|json] [--fail-on error|warning]
    glocon assemble <corpus> [--out FILE] [--format csv|jsonl]
    glocon agree <a> <b> [--level doc|sentence|token] [--mode strict|lenient] [--format text|json]
    glocon stats <corpus> [--format text|json]

Exit codes: 0 success, 1 diagnostics at or above the --fail-on
threshold, 2 usage error, 3 I/O or parse failure.  In JSON output mode
stdout carries only the requested payload; summaries go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .agreement import (
    AgreementLevel,
    KappaResult,
    MatchMode,
    PRFReport,
    label_kappa,
    pair_corpora,
    span_prf,
)
from .assemble import assemble_events, export_rows, rows_to_csv, rows_to_jsonl
from .io import CorpusDecodeError, load_corpus
from .lint import ConfigError, DEFAULT_CONFIG, Severity, load_config, validate_corpus
from .model import DocumentRecord

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3


@dataclass
class Stats:
    """Corpus-level counts: tags, labels, events."""

    documents: int = 0
    sentences: int = 0
    annotations: int = 0
    tag_counts: Counter = field(default_factory=Counter)
    protest_labels: Counter = field(default_factory=Counter)
    violent_labels: Counter = field(default_factory=Counter)
    demand_labels: Counter = field(default_factory=Counter)
    sentence_labels: Counter = field(default_factory=Counter)
    events_total: int = 0
    events_per_doc: dict[str, int] = field(default_factory=dict)

    def to_obj(self) -> dict:
        return {
            "documents": self.documents,
            "sentences": self.sentences,
            "annotations": self.annotations,
            "events_total": self.events_total,
            "tag_counts": dict(sorted(self.tag_counts.items())),
            "protest_labels": dict(sorted(self.protest_labels.items())),
            "violent_labels": dict(sorted(self.violent_labels.items())),
            "demand_labels": dict(sorted(self.demand_labels.items())),
            "sentence_labels": dict(sorted(self.sentence_labels.items())),
            "events_per_doc": self.events_per_doc,
        }


def corpus_stats(docs: Sequence[DocumentRecord]) -> Stats:
    """Deterministic counts over a corpus."""
    stats = Stats(documents=len(docs))
    for doc in docs:
        stats.sentences += len(doc.sentences)
        stats.annotations += len(doc.annotations)
        for sent in doc.sentences:
            key = "unlabeled" if sent.label is None else str(int(sent.label))
            stats.sentence_labels[key] += 1
        labels = doc.labels
        stats.protest_labels[labels.protest.value if labels.protest else "unlabeled"] += 1
        stats.violent_labels[labels.violent.value if labels.violent else "unlabeled"] += 1
        stats.demand_labels[labels.demand.value if labels.demand else "unlabeled"] += 1
        events = set()
        for ann in doc.annotations:
            stats.tag_counts[ann.tag.value] += 1
            events |= ann.events
        stats.events_per_doc[doc.doc_id] = len(events)
        stats.events_total += len(events)
    return stats


def _read_corpus(path: str):
    """Load a corpus file or return (None, exit_code) on hard failure."""
    try:
        docs, errors = load_corpus(path)
    except OSError as exc:
        print(f"glocon: cannot read {path}: {exc}", file=sys.stderr)
        return None, None, EXIT_IO
    except CorpusDecodeError as exc:
        print(f"glocon: {path}: {exc}", file=sys.stderr)
        return None, None, EXIT_IO
    for err in errors:
        print(f"glocon: {path}: {err}", file=sys.stderr)
    return docs, errors, None


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = DEFAULT_CONFIG
    if args.config:
        try:
            cfg = load_config(args.config)
        except OSError as exc:
            print(f"glocon: cannot read config {args.config}: {exc}", file=sys.stderr)
            return EXIT_IO
        except (ConfigError, json.JSONDecodeError) as exc:
            print(f"glocon: bad config {args.config}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    docs, parse_errors, failure = _read_corpus(args.corpus)
    if failure is not None:
        return failure

    report = validate_corpus(docs, cfg)
    totals = report.totals
    summary = (
        f"{report.documents} documents: "
        f"{totals[Severity.ERROR]} errors, {totals[Severity.WARNING]} warnings, "
        f"{totals[Severity.INFO]} info"
    )
    if args.format == "json":
        json.dump([d.to_obj() for d in report.diagnostics], sys.stdout, indent=2)
        sys.stdout.write("\n")
        print(summary, file=sys.stderr)
    else:
        for diag in report.diagnostics:
            print(diag.render())
        print(summary)

    if parse_errors:
        return EXIT_IO
    threshold = Severity.ERROR if args.fail_on == "error" else Severity.WARNING
    if report.count_at_or_above(threshold) > 0:
        return EXIT_FINDINGS
    return EXIT_OK


def _cmd_assemble(args: argparse.Namespace) -> int:
    docs, parse_errors, failure = _read_corpus(args.corpus)
    if failure is not None:
        return failure
    records = []
    for doc in docs:
        records.extend(assemble_events(doc))
    rows = export_rows(records)
    payload = rows_to_csv(rows) if args.format == "csv" else rows_to_jsonl(rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(payload)
        except OSError as exc:
            print(f"glocon: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(payload)
    print(f"{len(rows)} events from {len(docs)} documents", file=sys.stderr)
    return EXIT_IO if parse_errors else EXIT_OK


def _format_kappa_table(results: Sequence[KappaResult]) -> str:
    lines = ["level         kappa      p_o      p_e        n  skipped"]
    for res in results:
        if res.degenerate:
            lines.append(
                f"{res.level.value:<12} {'n/a':>6} {'n/a':>8} {'n/a':>8} {res.n:>8}  {res.skipped}"
            )
        else:
            lines.append(
                f"{res.level.value:<12} {res.kappa:>6.4f} {res.p_o:>8.4f} "
                f"{res.p_e:>8.4f} {res.n:>8}  {res.skipped}"
            )
    return "\n".join(lines)


def _format_prf_table(report: PRFReport) -> str:
    lines = [
        f"span agreement: mode={report.mode.value} reference={report.reference} "
        "(one-to-one greedy matching in canonical span order, exact matches first)",
        f"{'tag':<28} {'P':>7} {'R':>7} {'F1':>7} {'tp':>6} {'fp':>6} {'fn':>6}",
    ]
    for tag, s in sorted(report.per_tag.items()):
        lines.append(
            f"{tag:<28} {s.precision:>7.4f} {s.recall:>7.4f} {s.f1:>7.4f} "
            f"{s.tp:>6} {s.fp:>6} {s.fn:>6}"
        )
    m = report.micro
    lines.append(
        f"{'micro':<28} {m.precision:>7.4f} {m.recall:>7.4f} {m.f1:>7.4f} "
        f"{m.tp:>6} {m.fp:>6} {m.fn:>6}"
    )
    return "\n".join(lines)


def _cmd_agree(args: argparse.Namespace) -> int:
    docs_a, errors_a, failure = _read_corpus(args.corpus_a)
    if failure is not None:
        return failure
    docs_b, errors_b, failure = _read_corpus(args.corpus_b)
    if failure is not None:
        return failure

    pairing = pair_corpora(docs_a, docs_b)
    for mismatch in pairing.mismatched:
        print(f"glocon: {mismatch}", file=sys.stderr)
    pairing_note = (
        f"{len(pairing.pairs)} pairs, unmatched a={list(pairing.unmatched_a)}, "
        f"b={list(pairing.unmatched_b)}, token mismatches={len(pairing.mismatched)}"
    )

    if args.level == "token":
        report = span_prf(pairing.pairs, MatchMode(args.mode), reference="a")
        payload_obj: object = report.to_obj()
        text = _format_prf_table(report)
    else:
        levels = (
            [AgreementLevel.SENTENCE]
            if args.level == "sentence"
            else [
                AgreementLevel.DOC_PROTEST,
                AgreementLevel.DOC_VIOLENT,
                AgreementLevel.DOC_DEMAND,
            ]
        )
        results = [label_kappa(pairing.pairs, level) for level in levels]
        for res in results:
            if res.degenerate:
                print(
                    f"glocon: no items labeled on both sides at level {res.level.value}",
                    file=sys.stderr,
                )
        payload_obj = [r.to_obj() for r in results]
        text = _format_kappa_table(results)

    if args.format == "json":
        json.dump(payload_obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
        print(pairing_note, file=sys.stderr)
    else:
        print(text)
        print(pairing_note)
    return EXIT_IO if (errors_a or errors_b) else EXIT_OK


def _format_stats_text(stats: Stats) -> str:
    lines = [
        f"documents:   {stats.documents}",
        f"sentences:   {stats.sentences}",
        f"annotations: {stats.annotations}",
        f"events:      {stats.events_total}",
        "sentence labels: "
        + ", ".join(f"{k}={v}" for k, v in sorted(stats.sentence_labels.items())),
        "protest: " + ", ".join(f"{k}={v}" for k, v in sorted(stats.protest_labels.items())),
        "violent: " + ", ".join(f"{k}={v}" for k, v in sorted(stats.violent_labels.items())),
        "demand:  " + ", ".join(f"{k}={v}" for k, v in sorted(stats.demand_labels.items())),
        "tag counts:",
    ]
    for tag, count in sorted(stats.tag_counts.items()):
        lines.append(f"  {tag:<28} {count}")
    return "\n".join(lines)


def _cmd_stats(args: argparse.Namespace) -> int:
    docs, parse_errors, failure = _read_corpus(args.corpus)
    if failure is not None:
        return failure
    stats = corpus_stats(docs)
    if args.format == "json":
        json.dump(stats.to_obj(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(_format_stats_text(stats))
    return EXIT_IO if parse_errors else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glocon",
        description="Validate, assemble and score GLOCON-style protest event corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="lint a corpus against the manual rules")
    p_validate.add_argument("corpus")
    p_validate.add_argument("--config", help="lint configuration JSON file")
    p_validate.add_argument("--format", choices=("text", "json"), default="text")
    p_validate.add_argument("--fail-on", choices=("error", "warning"), default="error")
    p_validate.set_defaults(func=_cmd_validate)

    p_assemble = sub.add_parser("assemble", help="export normalized event records")
    p_assemble.add_argument("corpus")
    p_assemble.add_argument("--out", help="output file (default: stdout)")
    p_assemble.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_assemble.set_defaults(func=_cmd_assemble)

    p_agree = sub.add_parser("agree", help="inter-annotator agreement of two corpora")
    p_agree.add_argument("corpus_a")
    p_agree.add_argument("corpus_b")
    p_agree.add_argument("--level", choices=("doc", "sentence", "token"), default="doc")
    p_agree.add_argument("--mode", choices=("strict", "lenient"), default="strict")
    p_agree.add_argument("--format", choices=("text", "json"), default="text")
    p_agree.set_defaults(func=_cmd_agree)

    p_stats = sub.add_parser("stats", help="corpus statistics")
    p_stats.add_argument("corpus")
    p_stats.add_argument("--format", choices=("text", "json"), default="text")
    p_stats.set_defaults(func=_cmd_stats)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and execute a subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.func(args)


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
