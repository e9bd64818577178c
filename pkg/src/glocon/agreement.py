"""Inter-annotator agreement between two parallel corpora.

Label levels (document protest / violence / demand, sentence labels) are
scored with Cohen's kappa; the token-level span task is scored with
precision/recall/F1 under strict (coterminous span) or lenient (any
token overlap) matching.

Span matching is one-to-one and greedy in canonical span order; in
lenient mode coterminous matches are taken first so that every strict
true positive is also a lenient one.  Event numbers are ignored when
matching spans (annotators may number events differently).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .model import (
    Annotation,
    DemandLabel,
    DocumentRecord,
    ProtestLabel,
    SentenceLabel,
    ViolenceLabel,
    annotation_sort_key,
    coterminous,
    overlaps,
)


@dataclass(frozen=True)
class TokenMismatch:
    """A doc_id present in both corpora whose token sequences diverge."""

    doc_id: str
    sentence: int

    def __str__(self) -> str:
        return f"doc {self.doc_id}: tokenization diverges at sentence {self.sentence}"


@dataclass(frozen=True)
class PairingResult:
    pairs: tuple[tuple[DocumentRecord, DocumentRecord], ...]
    unmatched_a: tuple[str, ...]
    unmatched_b: tuple[str, ...]
    mismatched: tuple[TokenMismatch, ...]


def _first_divergent_sentence(a: DocumentRecord, b: DocumentRecord) -> int | None:
    for i, (sa, sb) in enumerate(zip(a.sentences, b.sentences)):
        if sa.tokens != sb.tokens:
            return i
    if len(a.sentences) != len(b.sentences):
        return min(len(a.sentences), len(b.sentences))
    return None


def pair_corpora(
    a: Sequence[DocumentRecord], b: Sequence[DocumentRecord]
) -> PairingResult:
    """Match documents by doc_id; reject pairs whose tokens differ."""
    b_by_id = {doc.doc_id: doc for doc in b}
    a_ids = {doc.doc_id for doc in a}
    pairs = []
    mismatched = []
    for doc_a in a:
        doc_b = b_by_id.get(doc_a.doc_id)
        if doc_b is None:
            continue
        divergent = _first_divergent_sentence(doc_a, doc_b)
        if divergent is None:
            pairs.append((doc_a, doc_b))
        else:
            mismatched.append(TokenMismatch(doc_a.doc_id, divergent))
    return PairingResult(
        pairs=tuple(pairs),
        unmatched_a=tuple(doc.doc_id for doc in a if doc.doc_id not in b_by_id),
        unmatched_b=tuple(doc.doc_id for doc in b if doc.doc_id not in a_ids),
        mismatched=tuple(mismatched),
    )


class AgreementLevel(str, enum.Enum):
    DOC_PROTEST = "doc_protest"
    DOC_VIOLENT = "doc_violent"
    DOC_DEMAND = "doc_demand"
    SENTENCE = "sentence"


_LEVEL_CATEGORIES: dict[AgreementLevel, tuple[str, ...]] = {
    AgreementLevel.DOC_PROTEST: tuple(l.value for l in ProtestLabel),
    AgreementLevel.DOC_VIOLENT: tuple(l.value for l in ViolenceLabel),
    AgreementLevel.DOC_DEMAND: tuple(l.value for l in DemandLabel),
    AgreementLevel.SENTENCE: tuple(str(int(l)) for l in SentenceLabel),
}


@dataclass(frozen=True)
class KappaResult:
    """Cohen's kappa for one labeling level.

    ``confusion`` counts (label_a, label_b) pairs over the level's full
    category set.  ``skipped`` counts items left out because either side
    was unlabeled.  With ``n == 0`` the result is degenerate and kappa,
    p_o and p_e are NaN.
    """

    level: AgreementLevel
    kappa: float
    p_o: float
    p_e: float
    confusion: Mapping[tuple[str, str], int]
    n: int
    skipped: int

    @property
    def degenerate(self) -> bool:
        return self.n == 0

    def to_obj(self) -> dict:
        return {
            "level": self.level.value,
            "kappa": None if math.isnan(self.kappa) else self.kappa,
            "p_o": None if math.isnan(self.p_o) else self.p_o,
            "p_e": None if math.isnan(self.p_e) else self.p_e,
            "n": self.n,
            "skipped": self.skipped,
            "confusion": {f"{a}|{b}": c for (a, b), c in sorted(self.confusion.items()) if c},
        }


def _doc_label_items(level: AgreementLevel) -> Callable[[DocumentRecord, DocumentRecord], list]:
    attr = {
        AgreementLevel.DOC_PROTEST: "protest",
        AgreementLevel.DOC_VIOLENT: "violent",
        AgreementLevel.DOC_DEMAND: "demand",
    }[level]

    def items(doc_a: DocumentRecord, doc_b: DocumentRecord) -> list:
        return [(getattr(doc_a.labels, attr), getattr(doc_b.labels, attr))]

    return items


def _sentence_items(doc_a: DocumentRecord, doc_b: DocumentRecord) -> list:
    return [
        (sa.label, sb.label) for sa, sb in zip(doc_a.sentences, doc_b.sentences)
    ]


def cohen_kappa(
    level: AgreementLevel, labeled_pairs: Sequence[tuple[str, str]], skipped: int = 0
) -> KappaResult:
    """Kappa from a list of (annotator A label, annotator B label) pairs."""
    categories = _LEVEL_CATEGORIES[level]
    confusion: dict[tuple[str, str], int] = {
        (x, y): 0 for x in categories for y in categories
    }
    for la, lb in labeled_pairs:
        confusion[(la, lb)] += 1
    n = len(labeled_pairs)
    if n == 0:
        nan = float("nan")
        return KappaResult(level, nan, nan, nan, confusion, 0, skipped)
    p_o = sum(confusion[(c, c)] for c in categories) / n
    marg_a = {c: sum(confusion[(c, y)] for y in categories) / n for c in categories}
    marg_b = {c: sum(confusion[(x, c)] for x in categories) / n for c in categories}
    p_e = sum(marg_a[c] * marg_b[c] for c in categories)
    if p_e == 1.0:
        # both annotators used a single identical category throughout
        kappa = 1.0 if p_o == 1.0 else float("nan")
    else:
        kappa = (p_o - p_e) / (1.0 - p_e)
    return KappaResult(level, kappa, p_o, p_e, confusion, n, skipped)


def label_kappa(
    pairs: Sequence[tuple[DocumentRecord, DocumentRecord]], level: AgreementLevel
) -> KappaResult:
    """Cohen's kappa over paired documents at the given level.

    Items where either annotator left the label unset are skipped (and
    counted in the result).
    """
    items = (
        _sentence_items if level is AgreementLevel.SENTENCE else _doc_label_items(level)
    )
    labeled: list[tuple[str, str]] = []
    skipped = 0
    for doc_a, doc_b in pairs:
        for la, lb in items(doc_a, doc_b):
            if la is None or lb is None:
                skipped += 1
                continue
            if level is AgreementLevel.SENTENCE:
                labeled.append((str(int(la)), str(int(lb))))
            else:
                labeled.append((la.value, lb.value))
    return cohen_kappa(level, labeled, skipped)


class MatchMode(str, enum.Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class TagScore:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float


def _score(tp: int, fp: int, fn: int) -> TagScore:
    if tp + fp + fn == 0:
        # nothing to find and nothing predicted
        return TagScore(0, 0, 0, 1.0, 1.0, 1.0)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return TagScore(tp, fp, fn, precision, recall, f1)


@dataclass(frozen=True)
class PRFReport:
    mode: MatchMode
    reference: str
    per_tag: Mapping[str, TagScore]
    micro: TagScore
    documents: int

    def to_obj(self) -> dict:
        def score_obj(s: TagScore) -> dict:
            return {
                "tp": s.tp,
                "fp": s.fp,
                "fn": s.fn,
                "precision": s.precision,
                "recall": s.recall,
                "f1": s.f1,
            }

        return {
            "mode": self.mode.value,
            "reference": self.reference,
            "documents": self.documents,
            "micro": score_obj(self.micro),
            "per_tag": {tag: score_obj(s) for tag, s in sorted(self.per_tag.items())},
        }


def _match_document(
    hyp: Sequence[Annotation],
    ref: Sequence[Annotation],
    mode: MatchMode,
    tp: dict,
    fp: dict,
    fn: dict,
) -> None:
    hyp = sorted(hyp, key=annotation_sort_key)
    ref = sorted(ref, key=annotation_sort_key)
    matched_ref: set[int] = set()
    matched_hyp: set[int] = set()

    def run_pass(predicate) -> None:
        for i, h in enumerate(hyp):
            if i in matched_hyp:
                continue
            for j, r in enumerate(ref):
                if j in matched_ref or r.tag is not h.tag:
                    continue
                if predicate(h.span, r.span):
                    matched_ref.add(j)
                    matched_hyp.add(i)
                    tp[h.tag.value] = tp.get(h.tag.value, 0) + 1
                    break

    # exact matches first, so the strict TP set is a subset of the lenient one
    run_pass(coterminous)
    if mode is MatchMode.LENIENT:
        run_pass(overlaps)

    for i, h in enumerate(hyp):
        if i not in matched_hyp:
            fp[h.tag.value] = fp.get(h.tag.value, 0) + 1
    for j, r in enumerate(ref):
        if j not in matched_ref:
            fn[r.tag.value] = fn.get(r.tag.value, 0) + 1


def span_prf(
    pairs: Sequence[tuple[DocumentRecord, DocumentRecord]],
    mode: MatchMode = MatchMode.STRICT,
    reference: str = "a",
) -> PRFReport:
    """Span-level precision/recall/F1 of one corpus against the other.

    ``reference`` selects which corpus of each pair is the gold side
    ("a" or "b"); the other side is scored as the hypothesis.
    """
    if reference not in ("a", "b"):
        raise ValueError(f"reference must be 'a' or 'b', got {reference!r}")
    tp: dict[str, int] = {}
    fp: dict[str, int] = {}
    fn: dict[str, int] = {}
    for doc_a, doc_b in pairs:
        ref_doc, hyp_doc = (doc_a, doc_b) if reference == "a" else (doc_b, doc_a)
        _match_document(hyp_doc.annotations, ref_doc.annotations, mode, tp, fp, fn)

    tags = sorted(set(tp) | set(fp) | set(fn))
    per_tag = {
        tag: _score(tp.get(tag, 0), fp.get(tag, 0), fn.get(tag, 0)) for tag in tags
    }
    micro = _score(sum(tp.values()), sum(fp.values()), sum(fn.values()))
    return PRFReport(
        mode=mode, reference=reference, per_tag=per_tag, micro=micro, documents=len(pairs)
    )
