"""Reading and writing the corpus file format.

Corpora are stored as UTF-8 JSON Lines (extension ``.glocon.jsonl``),
one document object per line::

    {"doc_id": "...",
     "labels": {"protest": "protest", "violent": "violent"},
     "sentences": [{"index": 0, "tokens": ["...", ...], "label": 1}, ...],
     "annotations": [{"id": "a1", "tag": "event_type", "sentence": 0,
                      "start": 3, "end": 4, "events": [1],
                      "confidence": 0.9, "comment": "..."}, ...]}

``events`` may be a plain integer array or a FLAT-style comment string
such as ``"Event 2, Event 3"``; the string form is normalized through
:func:`parse_event_refs` and re-emitted as a string on serialization.
An absent ``events`` key means event 1.  Absent optional fields
(``labels`` sub-keys, sentence ``label``, ``confidence``, ``comment``)
are omitted on output.

Serialization is canonical: keys in the order shown above, annotations
sorted by (sentence, start, end, tag), compact separators, LF line
endings.  ``parse_corpus(serialize_corpus(docs))`` reproduces ``docs``
exactly.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from typing import IO, Iterable

from .model import (
    Annotation,
    DemandLabel,
    DocumentLabels,
    DocumentRecord,
    InvariantError,
    ProtestLabel,
    SentenceLabel,
    SentenceRecord,
    TokenSpan,
    UnknownTagError,
    ViolenceLabel,
    annotation_sort_key,
    resolve_tag,
)

CORPUS_EXTENSION = ".glocon.jsonl"


class ParseErrorKind(str, enum.Enum):
    MALFORMED_RECORD = "malformed_record"
    UNKNOWN_TAG = "unknown_tag"
    BAD_SPAN = "bad_span"
    BAD_LABEL = "bad_label"
    BAD_EVENT_REF = "bad_event_ref"
    DUPLICATE_ID = "duplicate_id"


@dataclass(frozen=True)
class ParseError:
    """One rejected input line (or one problem within it)."""

    line: int
    doc_id: str | None
    kind: ParseErrorKind
    message: str

    def __str__(self) -> str:
        doc = self.doc_id or "?"
        return f"line {self.line} [{doc}] {self.kind.value}: {self.message}"


class CorpusDecodeError(Exception):
    """The byte stream is not valid UTF-8; nothing can be parsed."""

    def __init__(self, line: int, cause: UnicodeDecodeError):
        super().__init__(f"line {line}: undecodable bytes ({cause})")
        self.line = line


class EventRefError(ValueError):
    """A FLAT comment string does not follow the ``Event <n>`` grammar."""


_EVENT_REF = re.compile(r"Event\s*([0-9]+)\Z")

# Keyword is case-sensitive: "event 2" is not an event reference.
def parse_event_refs(raw: str | None) -> frozenset[int]:
    """Parse a FLAT-style event comment into a set of event numbers.

    Absent or empty input means event 1 (unnumbered tags belong to the
    first event).  Otherwise the string must be a comma-separated list
    of ``Event <positive integer>`` items, whitespace-insensitive.
    """
    if raw is None:
        return frozenset({1})
    text = raw.strip()
    if not text:
        return frozenset({1})
    numbers: set[int] = set()
    for part in text.split(","):
        m = _EVENT_REF.fullmatch(part.strip())
        if m is None:
            raise EventRefError(f"not an event reference: {part.strip()!r}")
        n = int(m.group(1))
        if n < 1:
            raise EventRefError(f"event numbers start at 1, got {n}")
        numbers.add(n)
    return frozenset(numbers)


def format_event_refs(events: Iterable[int]) -> str:
    """Canonical comment form of an event-number set: ``Event 1, Event 3``."""
    return ", ".join(f"Event {n}" for n in sorted(events))


class _LineError(Exception):
    """Internal: aborts parsing of one line with a single ParseError."""

    def __init__(self, kind: ParseErrorKind, message: str):
        self.kind = kind
        self.message = message


_DOC_KEYS = {"doc_id", "labels", "sentences", "annotations"}
_LABEL_KEYS = {"protest", "violent", "demand"}
_SENTENCE_KEYS = {"index", "tokens", "label"}
_ANNOTATION_KEYS = {
    "id",
    "tag",
    "sentence",
    "start",
    "end",
    "events",
    "confidence",
    "comment",
}


def _require_int(value: object, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, f"{what} must be an integer")
    return value


def _parse_labels(obj: object) -> DocumentLabels:
    if obj is None:
        return DocumentLabels()
    if not isinstance(obj, dict):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "labels must be an object")
    unknown = set(obj) - _LABEL_KEYS
    if unknown:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD, f"unknown label keys: {sorted(unknown)}"
        )

    def pick(key: str, vocab):
        value = obj.get(key)
        if value is None:
            return None
        try:
            return vocab(value)
        except ValueError:
            raise _LineError(
                ParseErrorKind.BAD_LABEL, f"bad {key} label: {value!r}"
            ) from None

    try:
        return DocumentLabels(
            protest=pick("protest", ProtestLabel),
            violent=pick("violent", ViolenceLabel),
            demand=pick("demand", DemandLabel),
        )
    except InvariantError as exc:
        raise _LineError(ParseErrorKind.BAD_LABEL, str(exc)) from None


def _parse_sentence(obj: object, position: int) -> SentenceRecord:
    if not isinstance(obj, dict):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "sentence must be an object")
    unknown = set(obj) - _SENTENCE_KEYS
    if unknown:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD,
            f"sentence {position}: unknown keys {sorted(unknown)}",
        )
    index = _require_int(obj.get("index"), f"sentence {position}: index")
    if index != position:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD,
            f"sentence index {index} at position {position}",
        )
    tokens = obj.get("tokens")
    if (
        not isinstance(tokens, list)
        or not tokens
        or any(not isinstance(t, str) or t == "" for t in tokens)
    ):
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD,
            f"sentence {position}: tokens must be a non-empty list of non-empty strings",
        )
    label_raw = obj.get("label")
    label = None
    if label_raw is not None:
        if not isinstance(label_raw, int) or isinstance(label_raw, bool):
            raise _LineError(
                ParseErrorKind.BAD_LABEL,
                f"sentence {position}: label must be 0, 1 or 2",
            )
        try:
            label = SentenceLabel(label_raw)
        except ValueError:
            raise _LineError(
                ParseErrorKind.BAD_LABEL,
                f"sentence {position}: label must be 0, 1 or 2, got {label_raw}",
            ) from None
    return SentenceRecord(index=index, tokens=tuple(tokens), label=label)


def _parse_annotation(obj: object, sentences: tuple[SentenceRecord, ...]) -> Annotation:
    if not isinstance(obj, dict):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "annotation must be an object")
    unknown = set(obj) - _ANNOTATION_KEYS
    if unknown:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD,
            f"annotation: unknown keys {sorted(unknown)}",
        )
    ann_id = obj.get("id")
    if not isinstance(ann_id, str) or not ann_id:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD, "annotation id must be a non-empty string"
        )
    tag_raw = obj.get("tag")
    if not isinstance(tag_raw, str):
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD, f"annotation {ann_id}: tag must be a string"
        )
    try:
        tag = resolve_tag(tag_raw)
    except UnknownTagError as exc:
        raise _LineError(ParseErrorKind.UNKNOWN_TAG, f"annotation {ann_id}: {exc}") from None

    sentence = _require_int(obj.get("sentence"), f"annotation {ann_id}: sentence")
    start = _require_int(obj.get("start"), f"annotation {ann_id}: start")
    end = _require_int(obj.get("end"), f"annotation {ann_id}: end")
    if not 0 <= sentence < len(sentences):
        raise _LineError(
            ParseErrorKind.BAD_SPAN,
            f"annotation {ann_id}: sentence {sentence} of {len(sentences)}",
        )
    n_tokens = len(sentences[sentence].tokens)
    if not 0 <= start < end <= n_tokens:
        raise _LineError(
            ParseErrorKind.BAD_SPAN,
            f"annotation {ann_id}: span [{start}, {end}) in a {n_tokens}-token sentence",
        )

    events_raw = obj.get("events")
    from_comment = False
    if events_raw is None:
        events = frozenset({1})
    elif isinstance(events_raw, str):
        try:
            events = parse_event_refs(events_raw)
        except EventRefError as exc:
            raise _LineError(
                ParseErrorKind.BAD_EVENT_REF, f"annotation {ann_id}: {exc}"
            ) from None
        from_comment = True
    elif isinstance(events_raw, list):
        if not events_raw or any(
            not isinstance(n, int) or isinstance(n, bool) or n < 1 for n in events_raw
        ):
            raise _LineError(
                ParseErrorKind.BAD_EVENT_REF,
                f"annotation {ann_id}: events must be a non-empty list of positive integers",
            )
        events = frozenset(events_raw)
    else:
        raise _LineError(
            ParseErrorKind.BAD_EVENT_REF,
            f"annotation {ann_id}: events must be an integer array or an 'Event N' string",
        )

    confidence = obj.get("confidence")
    if confidence is not None:
        if isinstance(confidence, bool) or not isinstance(confidence, (int, float)):
            raise _LineError(
                ParseErrorKind.MALFORMED_RECORD,
                f"annotation {ann_id}: confidence must be a number",
            )
        confidence = float(confidence)
    comment = obj.get("comment")
    if comment is not None and not isinstance(comment, str):
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD,
            f"annotation {ann_id}: comment must be a string",
        )

    try:
        return Annotation(
            id=ann_id,
            tag=tag,
            span=TokenSpan(sentence=sentence, start=start, end=end),
            events=events,
            confidence=confidence,
            comment=comment,
            events_from_comment=from_comment,
        )
    except InvariantError as exc:
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, str(exc)) from None


def _parse_line(text: str) -> DocumentRecord:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, f"invalid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "record must be a JSON object")
    unknown = set(obj) - _DOC_KEYS
    if unknown:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD, f"unknown record keys: {sorted(unknown)}"
        )
    doc_id = obj.get("doc_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise _LineError(
            ParseErrorKind.MALFORMED_RECORD, "doc_id must be a non-empty string"
        )
    labels = _parse_labels(obj.get("labels"))

    sentences_raw = obj.get("sentences", [])
    if not isinstance(sentences_raw, list):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "sentences must be an array")
    sentences = tuple(
        _parse_sentence(sent, pos) for pos, sent in enumerate(sentences_raw)
    )

    annotations_raw = obj.get("annotations", [])
    if not isinstance(annotations_raw, list):
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, "annotations must be an array")
    annotations = []
    seen_ids: set[str] = set()
    for ann_raw in annotations_raw:
        ann = _parse_annotation(ann_raw, sentences)
        if ann.id in seen_ids:
            raise _LineError(
                ParseErrorKind.DUPLICATE_ID, f"duplicate annotation id {ann.id!r}"
            )
        seen_ids.add(ann.id)
        annotations.append(ann)

    try:
        return DocumentRecord(
            doc_id=doc_id,
            labels=labels,
            sentences=sentences,
            annotations=tuple(annotations),
        )
    except InvariantError as exc:
        raise _LineError(ParseErrorKind.MALFORMED_RECORD, str(exc)) from None


def _extract_doc_id(text: str) -> str | None:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return None
    if isinstance(obj, dict) and isinstance(obj.get("doc_id"), str):
        return obj["doc_id"]
    return None


def parse_corpus(
    data: bytes | str | IO[bytes],
) -> tuple[list[DocumentRecord], list[ParseError]]:
    """Parse a corpus from bytes, text, or a binary file object.

    One DocumentRecord per well-formed line, in input order.  A malformed
    line produces at least one ParseError and no record.  Blank lines are
    skipped.  Undecodable bytes raise CorpusDecodeError.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        raw_lines: list[str] = []
        for lineno, raw in enumerate(data.split(b"\n"), start=1):
            try:
                raw_lines.append(raw.decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise CorpusDecodeError(lineno, exc) from None
        lines = raw_lines
    else:
        lines = data.split("\n")

    docs: list[DocumentRecord] = []
    errors: list[ParseError] = []
    seen_doc_ids: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            doc = _parse_line(line)
        except _LineError as err:
            errors.append(
                ParseError(
                    line=lineno,
                    doc_id=_extract_doc_id(line),
                    kind=err.kind,
                    message=err.message,
                )
            )
            continue
        if doc.doc_id in seen_doc_ids:
            errors.append(
                ParseError(
                    line=lineno,
                    doc_id=doc.doc_id,
                    kind=ParseErrorKind.DUPLICATE_ID,
                    message=f"duplicate doc_id {doc.doc_id!r}",
                )
            )
            continue
        seen_doc_ids.add(doc.doc_id)
        docs.append(doc)
    return docs, errors


def _confidence_json(c: float) -> float:
    # Constructor guarantees at most 6 fractional digits already.
    return round(c, 6)


def document_to_obj(doc: DocumentRecord) -> dict:
    """Canonical JSON-compatible dict for one document."""
    labels: dict[str, str] = {}
    if doc.labels.protest is not None:
        labels["protest"] = doc.labels.protest.value
    if doc.labels.violent is not None:
        labels["violent"] = doc.labels.violent.value
    if doc.labels.demand is not None:
        labels["demand"] = doc.labels.demand.value

    sentences = []
    for sent in doc.sentences:
        obj: dict = {"index": sent.index, "tokens": list(sent.tokens)}
        if sent.label is not None:
            obj["label"] = int(sent.label)
        sentences.append(obj)

    annotations = []
    for ann in sorted(doc.annotations, key=annotation_sort_key):
        obj = {
            "id": ann.id,
            "tag": ann.tag.value,
            "sentence": ann.span.sentence,
            "start": ann.span.start,
            "end": ann.span.end,
        }
        if ann.events_from_comment:
            obj["events"] = format_event_refs(ann.events)
        else:
            obj["events"] = sorted(ann.events)
        if ann.confidence is not None:
            obj["confidence"] = _confidence_json(ann.confidence)
        if ann.comment is not None:
            obj["comment"] = ann.comment
        annotations.append(obj)

    return {
        "doc_id": doc.doc_id,
        "labels": labels,
        "sentences": sentences,
        "annotations": annotations,
    }


def serialize_corpus(docs: Iterable[DocumentRecord]) -> bytes:
    """Serialize documents to canonical UTF-8 JSON Lines."""
    out: list[str] = []
    for doc in docs:
        out.append(
            json.dumps(document_to_obj(doc), ensure_ascii=False, separators=(",", ":"))
        )
        out.append("\n")
    return "".join(out).encode("utf-8")


def load_corpus(path: str) -> tuple[list[DocumentRecord], list[ParseError]]:
    with open(path, "rb") as handle:
        return parse_corpus(handle.read())


def save_corpus(path: str, docs: Iterable[DocumentRecord]) -> None:
    with open(path, "wb") as handle:
        handle.write(serialize_corpus(docs))
