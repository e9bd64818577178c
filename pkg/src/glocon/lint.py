"""Rule engine that checks documents against the annotation manual's
machine-checkable rules.

Each rule has a stable id, a default severity and a short description
(see CATALOG).  ``validate_document`` is a pure function of the document
and the configuration; diagnostics come back in canonical order
(sentence, span start, rule id).

Severities can be overridden and rules disabled per run through
:class:`LintConfig`.  The lexicons (articles, estimation qualifiers,
token event words, country gazetteer) default to the English lists and
can be replaced for other corpus languages.
"""

from __future__ import annotations

import enum
import json
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .model import (
    Annotation,
    DocumentRecord,
    FACILITY_TAGS,
    Focus,
    LOCATION_IDENTIFIER_TAGS,
    ORGANIZER_ATTRIBUTE_TAGS,
    ORGANIZER_HEAD_TAGS,
    PARTICIPANT_ATTRIBUTE_TAGS,
    ProtestLabel,
    SentenceLabel,
    TagId,
    TARGET_TAGS,
    TokenSpan,
    TRIGGER_TAGS,
    annotation_sort_key,
    coterminous,
    focus_of,
    overlaps,
    span_contains,
)


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


_SEVERITY_ORDER = {Severity.INFO: 0, Severity.WARNING: 1, Severity.ERROR: 2}


@dataclass(frozen=True)
class Rule:
    id: str
    severity: Severity
    title: str


# str-keyed so config files and diagnostics stay plain text.
CATALOG: dict[str, Rule] = {
    r.id: r
    for r in [
        Rule("E010", Severity.ERROR, "argument in a sentence without a trigger of a shared event"),
        Rule("E020", Severity.ERROR, "event number referenced by arguments but has no trigger"),
        Rule("E021", Severity.ERROR, "event trigger discipline violated"),
        Rule("E022", Severity.ERROR, "participant_type and participant semantic tag not paired"),
        Rule("E023", Severity.ERROR, "organizer type/name and organizer semantic tag not paired"),
        Rule("E030", Severity.ERROR, "overlapping annotations not licensed by the overlap rules"),
        Rule("E050", Severity.ERROR, "event-level content in a document labeled no_protest"),
        Rule("W101", Severity.WARNING, "span starts or ends with a punctuation-only token"),
        Rule("W102", Severity.WARNING, "span begins with an indefinite article"),
        Rule("W103", Severity.WARNING, "span begins with lowercase definite article"),
        Rule("W110", Severity.WARNING, "sentence labeled 1 contains no trigger annotation"),
        Rule("W111", Severity.WARNING, "trigger annotation in a sentence labeled 0 or 2"),
        Rule("W112", Severity.WARNING, "token event word tagged event_type despite a descriptive trigger"),
        Rule("W120", Severity.WARNING, "location identifier overlaps a facility annotation"),
        Rule("W121", Severity.WARNING, "event numbers not contiguous from 1"),
        Rule("W122", Severity.WARNING, "explicit 'Event 1' comment on a tag"),
        Rule("W130", Severity.WARNING, "country name tagged as event place"),
        Rule("W131", Severity.WARNING, "participant_count span begins with an estimation qualifier"),
        Rule("W140", Severity.WARNING, "two events indistinguishable on every separation axis"),
        Rule("W141", Severity.INFO, "event assembled without any trigger annotation"),
        Rule("W142", Severity.WARNING, "triggers of one event carry differing semantic categories"),
        Rule("I150", Severity.INFO, "same participant surface form with differing semantic tags"),
    ]
}

# W140/W141 are emitted by the event assembler's separation check, not by
# validate_document; they live in the catalog so ids and severities are
# defined in one place.
ASSEMBLY_RULES = frozenset({"W140", "W141"})


@dataclass(frozen=True)
class Diagnostic:
    """One rule violation at a resolvable position in a document."""

    rule: str
    severity: Severity
    doc_id: str
    sentence: int
    span: TokenSpan | None
    annotation_ids: tuple[str, ...]
    message: str

    def sort_key(self) -> tuple:
        start = self.span.start if self.span is not None else -1
        return (self.sentence, start, self.rule, self.annotation_ids)

    def render(self) -> str:
        if self.span is not None:
            where = f"{self.doc_id}:{self.sentence}:{self.span.start}-{self.span.end}"
        else:
            where = f"{self.doc_id}:{self.sentence}:-"
        return f"{where} {self.rule} {self.severity.value} {self.message}"

    def to_obj(self) -> dict:
        return {
            "rule": self.rule,
            "severity": self.severity.value,
            "doc_id": self.doc_id,
            "sentence": self.sentence,
            "start": self.span.start if self.span else None,
            "end": self.span.end if self.span else None,
            "annotations": list(self.annotation_ids),
            "message": self.message,
        }


DEFAULT_INDEFINITE_ARTICLES = frozenset({"a", "an"})
DEFAULT_DEFINITE_ARTICLES = frozenset({"the"})
DEFAULT_ESTIMATION_QUALIFIERS = ("more than", "nearly", "as many as", "about", "over")
DEFAULT_TOKEN_EVENT_WORDS = frozenset({"incident", "event", "protest", "agitation"})
# The corpus' focus countries; extend or replace via configuration.
DEFAULT_COUNTRIES = frozenset({"india", "china", "south africa", "argentina", "brazil"})


@dataclass(frozen=True)
class Lexicons:
    """Per-language word lists used by the span-shape rules."""

    articles_indefinite: frozenset[str] = DEFAULT_INDEFINITE_ARTICLES
    articles_definite: frozenset[str] = DEFAULT_DEFINITE_ARTICLES
    estimation_qualifiers: tuple[str, ...] = DEFAULT_ESTIMATION_QUALIFIERS
    token_event_words: frozenset[str] = DEFAULT_TOKEN_EVENT_WORDS
    countries: frozenset[str] = DEFAULT_COUNTRIES

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "articles_indefinite", frozenset(w.casefold() for w in self.articles_indefinite)
        )
        object.__setattr__(
            self, "articles_definite", frozenset(self.articles_definite)
        )
        object.__setattr__(
            self, "estimation_qualifiers", tuple(self.estimation_qualifiers)
        )
        object.__setattr__(
            self, "token_event_words", frozenset(w.casefold() for w in self.token_event_words)
        )
        object.__setattr__(
            self, "countries", frozenset(c.casefold() for c in self.countries)
        )
        object.__setattr__(
            self,
            "_qualifier_seqs",
            tuple(tuple(q.casefold().split()) for q in self.estimation_qualifiers),
        )

    def qualifier_token_sequences(self) -> tuple[tuple[str, ...], ...]:
        return self._qualifier_seqs


class ConfigError(ValueError):
    """A lint configuration references unknown rules or keys."""


@dataclass(frozen=True)
class LintConfig:
    severity_overrides: Mapping[str, Severity] = field(default_factory=dict)
    disabled_rules: frozenset[str] = frozenset()
    lexicons: Lexicons = Lexicons()

    def __post_init__(self) -> None:
        for rule_id in self.severity_overrides:
            if rule_id not in CATALOG:
                raise ConfigError(f"severity override for unknown rule {rule_id!r}")
        object.__setattr__(self, "disabled_rules", frozenset(self.disabled_rules))
        for rule_id in self.disabled_rules:
            if rule_id not in CATALOG:
                raise ConfigError(f"cannot disable unknown rule {rule_id!r}")

    def enabled(self, rule_id: str) -> bool:
        return rule_id not in self.disabled_rules

    def severity_of(self, rule_id: str) -> Severity:
        return self.severity_overrides.get(rule_id, CATALOG[rule_id].severity)

    @classmethod
    def from_obj(cls, obj: dict) -> "LintConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(obj) - {"severity_overrides", "disabled_rules", "lexicons"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        overrides = {}
        for rule_id, sev in (obj.get("severity_overrides") or {}).items():
            try:
                overrides[rule_id] = Severity(sev)
            except ValueError:
                raise ConfigError(f"bad severity {sev!r} for rule {rule_id!r}") from None
        lex_obj = obj.get("lexicons") or {}
        lex_keys = {
            "articles_indefinite",
            "articles_definite",
            "estimation_qualifiers",
            "token_event_words",
            "countries",
        }
        unknown = set(lex_obj) - lex_keys
        if unknown:
            raise ConfigError(f"unknown lexicon keys: {sorted(unknown)}")
        defaults = Lexicons()
        lexicons = Lexicons(
            articles_indefinite=frozenset(
                lex_obj.get("articles_indefinite", defaults.articles_indefinite)
            ),
            articles_definite=frozenset(
                lex_obj.get("articles_definite", defaults.articles_definite)
            ),
            estimation_qualifiers=tuple(
                lex_obj.get("estimation_qualifiers", defaults.estimation_qualifiers)
            ),
            token_event_words=frozenset(
                lex_obj.get("token_event_words", defaults.token_event_words)
            ),
            countries=frozenset(lex_obj.get("countries", defaults.countries)),
        )
        return cls(
            severity_overrides=overrides,
            disabled_rules=frozenset(obj.get("disabled_rules") or []),
            lexicons=lexicons,
        )


DEFAULT_CONFIG = LintConfig()


def load_config(path: str) -> LintConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return LintConfig.from_obj(json.load(handle))


@lru_cache(maxsize=65536)
def is_punctuation_token(token: str) -> bool:
    """All characters in Unicode punctuation/symbol categories (P*, S*)."""
    return bool(token) and all(unicodedata.category(ch)[0] in "PS" for ch in token)


# Per-focus *_type / *_name pairs that must never overlap each other.
_NAME_EXCLUSIVE_PAIRS = frozenset(
    {
        frozenset({TagId.PARTICIPANT_TYPE, TagId.PARTICIPANT_NAME}),
        frozenset({TagId.ORGANIZER_TYPE, TagId.ORGANIZER_NAME}),
        frozenset({TagId.FACILITY_TYPE, TagId.FACILITY_NAME}),
        frozenset({TagId.TARGET_TYPE, TagId.TARGET_NAME}),
    }
)

_SEMANTIC_HOSTS: dict[Focus, frozenset[TagId]] = {
    Focus.EVENT_SEMANTIC: TRIGGER_TAGS,
    Focus.PARTICIPANT_SEMANTIC: frozenset({TagId.PARTICIPANT_TYPE}),
    Focus.ORGANIZER_SEMANTIC: ORGANIZER_HEAD_TAGS,
}


def allowed_overlap(a: Annotation, b: Annotation, doc: DocumentRecord) -> bool:
    """Is an overlap of these two annotations licensed?

    Licensing clauses (any one suffices):
      i.   either annotation is the document title;
      ii.  a participant attribute tag contained in a participant_type span;
      iii. an organizer attribute tag contained in an organizer type/name span;
      iv.  a semantic tag coterminous with its host kind;
      v.   the annotations belong to disjoint event sets;
      vi.  a facility tag paired with a target tag.

    Named-entity exclusivity overrides everything: a *_type tag may never
    overlap the *_name tag of the same focus.
    """
    del doc  # licensing depends only on the two annotations
    ta, tb = a.tag, b.tag
    if frozenset({ta, tb}) in _NAME_EXCLUSIVE_PAIRS:
        return False
    # i. document title overlays all event information in the title
    if ta is TagId.DOCUMENT_TITLE or tb is TagId.DOCUMENT_TITLE:
        return True
    # ii. participant attributes inside the participant_type span
    for host, attr in ((a, b), (b, a)):
        if (
            host.tag is TagId.PARTICIPANT_TYPE
            and attr.tag in PARTICIPANT_ATTRIBUTE_TAGS
            and span_contains(host.span, attr.span)
        ):
            return True
        # iii. organizer attributes inside organizer type/name spans
        if (
            host.tag in ORGANIZER_HEAD_TAGS
            and attr.tag in ORGANIZER_ATTRIBUTE_TAGS
            and span_contains(host.span, attr.span)
        ):
            return True
        # iv. semantic tags sit coterminously on their hosts
        hosts_for = _SEMANTIC_HOSTS.get(focus_of(attr.tag))
        if hosts_for is not None and host.tag in hosts_for and coterminous(host.span, attr.span):
            return True
    # v. same tokens may serve different events
    if a.events.isdisjoint(b.events):
        return True
    # vi. a facility that is at the same time the target
    if (ta in FACILITY_TAGS and tb in TARGET_TAGS) or (
        tb in FACILITY_TAGS and ta in TARGET_TAGS
    ):
        return True
    return False


class _DocIndex:
    """Per-document lookups shared by the rules."""

    def __init__(self, doc: DocumentRecord):
        self.doc = doc
        self.anns = doc.annotations  # already in canonical order
        self.by_sentence: dict[int, list[Annotation]] = defaultdict(list)
        self.triggers: list[Annotation] = []
        self.trigger_events_by_sentence: dict[int, set[int]] = defaultdict(set)
        self.trigger_events: set[int] = set()
        self.argument_events: set[int] = set()
        self.title_spans: list[TokenSpan] = []
        self.event_semantic: list[Annotation] = []
        self.participant_semantic: list[Annotation] = []
        self.organizer_semantic: list[Annotation] = []
        for ann in self.anns:
            self.by_sentence[ann.span.sentence].append(ann)
            tag = ann.tag
            if tag in TRIGGER_TAGS:
                self.triggers.append(ann)
                self.trigger_events_by_sentence[ann.span.sentence] |= ann.events
                self.trigger_events |= ann.events
            else:
                focus = focus_of(tag)
                if focus is Focus.DOC_INFO:
                    if tag is TagId.DOCUMENT_TITLE:
                        self.title_spans.append(ann.span)
                    continue
                self.argument_events |= ann.events
                if focus is Focus.EVENT_SEMANTIC:
                    self.event_semantic.append(ann)
                elif focus is Focus.PARTICIPANT_SEMANTIC:
                    self.participant_semantic.append(ann)
                elif focus is Focus.ORGANIZER_SEMANTIC:
                    self.organizer_semantic.append(ann)
        self._text_cache: dict[str, str] = {}

    def text(self, ann: Annotation) -> str:
        cached = self._text_cache.get(ann.id)
        if cached is None:
            cached = self.doc.span_text(ann.span)
            self._text_cache[ann.id] = cached
        return cached

    def in_title(self, ann: Annotation) -> bool:
        if ann.tag is TagId.DOCUMENT_TITLE:
            return False
        span = ann.span
        return any(span_contains(title, span) for title in self.title_spans)

    def tokens(self, ann: Annotation) -> tuple[str, ...]:
        span = ann.span
        return self.doc.sentences[span.sentence].tokens[span.start : span.end]


def _semantic_partners(
    hosts: Iterable[Annotation], semantics: Sequence[Annotation]
) -> dict[str, list[Annotation]]:
    """For each host annotation id, the coterminous semantic tags sharing an event."""
    by_pos: dict[TokenSpan, list[Annotation]] = defaultdict(list)
    for sem in semantics:
        by_pos[sem.span].append(sem)
    out: dict[str, list[Annotation]] = {}
    for host in hosts:
        out[host.id] = [
            sem for sem in by_pos.get(host.span, ()) if not sem.events.isdisjoint(host.events)
        ]
    return out


def validate_document(
    doc: DocumentRecord, cfg: LintConfig = DEFAULT_CONFIG
) -> list[Diagnostic]:
    """Run every enabled rule against one document.

    Pure function: identical inputs yield identical diagnostics, ordered
    by (sentence, span start, rule id).
    """
    idx = _DocIndex(doc)
    found: list[Diagnostic] = []

    def emit(
        rule: str,
        sentence: int,
        span: TokenSpan | None,
        ann_ids: tuple[str, ...],
        message: str,
    ) -> None:
        found.append(
            Diagnostic(
                rule=rule,
                severity=cfg.severity_of(rule),
                doc_id=doc.doc_id,
                sentence=sentence,
                span=span,
                annotation_ids=ann_ids,
                message=message,
            )
        )

    enabled = cfg.enabled

    if enabled("E010"):
        trig_by_sent = idx.trigger_events_by_sentence
        for ann in idx.anns:
            tag = ann.tag
            if tag in TRIGGER_TAGS or focus_of(tag) is Focus.DOC_INFO:
                continue
            if ann.events.isdisjoint(trig_by_sent.get(ann.span.sentence, ())):
                if idx.in_title(ann):
                    continue  # title content is annotated without trigger discipline
                emit(
                    "E010",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    f"{tag.value} argument in a sentence with no trigger of "
                    f"event(s) {sorted(ann.events)}",
                )

    if enabled("E020"):
        dangling = idx.argument_events - idx.trigger_events
        for number in sorted(dangling):
            first = next(
                ann
                for ann in idx.anns
                if number in ann.events
                and ann.tag not in TRIGGER_TAGS
                and focus_of(ann.tag) is not Focus.DOC_INFO
            )
            emit(
                "E020",
                first.span.sentence,
                first.span,
                (first.id,),
                f"event {number} is referenced by arguments but has no trigger annotation",
            )

    if enabled("E021"):
        # at most one event_type inside and one outside the title, per event
        typed_by_event: dict[int, list[Annotation]] = defaultdict(list)
        for trig in idx.triggers:
            if trig.tag is TagId.EVENT_TYPE:
                for n in trig.events:
                    typed_by_event[n].append(trig)
        for number in sorted(typed_by_event):
            in_title = [t for t in typed_by_event[number] if idx.in_title(t)]
            in_body = [t for t in typed_by_event[number] if not idx.in_title(t)]
            for group, where in ((in_body, "outside the title"), (in_title, "in the title")):
                if len(group) > 1:
                    lead = group[1]
                    emit(
                        "E021",
                        lead.span.sentence,
                        lead.span,
                        tuple(t.id for t in group),
                        f"event {number} has {len(group)} event_type tags {where}",
                    )
        # semantic tags and triggers pair up coterminously
        partners = _semantic_partners(idx.triggers, idx.event_semantic)
        hosted: set[str] = set()
        for trig in idx.triggers:
            sems = partners[trig.id]
            hosted.update(sem.id for sem in sems)
            if not sems:
                emit(
                    "E021",
                    trig.span.sentence,
                    trig.span,
                    (trig.id,),
                    f"trigger {trig.tag.value} has no coterminous semantic category tag",
                )
            elif len(sems) > 1:
                emit(
                    "E021",
                    trig.span.sentence,
                    trig.span,
                    (trig.id, *(sem.id for sem in sems)),
                    f"trigger {trig.tag.value} has {len(sems)} semantic category tags",
                )
        for sem in idx.event_semantic:
            if sem.id not in hosted:
                emit(
                    "E021",
                    sem.span.sentence,
                    sem.span,
                    (sem.id,),
                    f"semantic tag {sem.tag.value} is not coterminous with a trigger of its event",
                )

    if enabled("E022"):
        p_types = [a for a in idx.anns if a.tag is TagId.PARTICIPANT_TYPE]
        partners = _semantic_partners(p_types, idx.participant_semantic)
        hosted = set()
        for head in p_types:
            sems = partners[head.id]
            hosted.update(sem.id for sem in sems)
            if not sems:
                emit(
                    "E022",
                    head.span.sentence,
                    head.span,
                    (head.id,),
                    "participant_type without a coterminous participant semantic tag",
                )
        for sem in idx.participant_semantic:
            if sem.id not in hosted:
                emit(
                    "E022",
                    sem.span.sentence,
                    sem.span,
                    (sem.id,),
                    f"participant semantic tag {sem.tag.value} without a coterminous participant_type",
                )

    if enabled("E023"):
        o_heads = [a for a in idx.anns if a.tag in ORGANIZER_HEAD_TAGS]
        partners = _semantic_partners(o_heads, idx.organizer_semantic)
        hosted = set()
        for head in o_heads:
            sems = partners[head.id]
            hosted.update(sem.id for sem in sems)
            if not sems:
                emit(
                    "E023",
                    head.span.sentence,
                    head.span,
                    (head.id,),
                    f"{head.tag.value} without a coterminous organizer semantic tag",
                )
        for sem in idx.organizer_semantic:
            if sem.id not in hosted:
                emit(
                    "E023",
                    sem.span.sentence,
                    sem.span,
                    (sem.id,),
                    f"organizer semantic tag {sem.tag.value} without a coterminous organizer type/name",
                )

    if enabled("E030"):
        for sent_anns in idx.by_sentence.values():
            count = len(sent_anns)
            for i in range(count):
                a = sent_anns[i]
                a_end = a.span.end
                for j in range(i + 1, count):
                    b = sent_anns[j]
                    if b.span.start >= a_end:
                        break  # sorted by start; nothing later overlaps a
                    pair = frozenset({a.tag, b.tag})
                    # location-identifier/facility overlaps are W120's case
                    if (
                        a.tag in LOCATION_IDENTIFIER_TAGS
                        and b.tag in FACILITY_TAGS
                        or b.tag in LOCATION_IDENTIFIER_TAGS
                        and a.tag in FACILITY_TAGS
                    ):
                        continue
                    if not allowed_overlap(a, b, doc):
                        emit(
                            "E030",
                            a.span.sentence,
                            a.span,
                            (a.id, b.id),
                            f"unlicensed overlap of {a.tag.value} and {b.tag.value}",
                        )

    if enabled("E050"):
        labels = doc.labels
        no_protest = labels.protest is ProtestLabel.NO_PROTEST
        if labels.violent is not None and labels.protest is not ProtestLabel.PROTEST:
            emit("E050", 0, None, (), "violence label on a document not labeled protest")
        if labels.demand is not None and labels.protest is not ProtestLabel.PROTEST:
            emit("E050", 0, None, (), "demand label on a document not labeled protest")
        if no_protest:
            for sent in doc.sentences:
                anns_here = idx.by_sentence.get(sent.index, [])
                if anns_here:
                    emit(
                        "E050",
                        sent.index,
                        None,
                        tuple(a.id for a in anns_here),
                        "token annotations in a document labeled no_protest",
                    )
                if sent.label is SentenceLabel.EVENT:
                    emit(
                        "E050",
                        sent.index,
                        None,
                        (),
                        "sentence labeled 1 in a document labeled no_protest",
                    )

    w101 = enabled("W101")
    w102 = enabled("W102")
    w103 = enabled("W103")
    if w101 or w102 or w103:
        indefinite = cfg.lexicons.articles_indefinite
        definite = cfg.lexicons.articles_definite
        for ann in idx.anns:
            toks = idx.tokens(ann)
            first = toks[0]
            if w101 and (is_punctuation_token(first) or is_punctuation_token(toks[-1])):
                emit(
                    "W101",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    f"{ann.tag.value} span starts or ends with punctuation",
                )
            if w102 and first.casefold() in indefinite:
                emit(
                    "W102",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    f"{ann.tag.value} span begins with an indefinite article",
                )
            if w103 and first in definite:
                emit(
                    "W103",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    f"{ann.tag.value} span begins with a lowercase definite article",
                )

    if enabled("W110"):
        for sent in doc.sentences:
            if sent.label is SentenceLabel.EVENT and not idx.trigger_events_by_sentence.get(
                sent.index
            ):
                emit(
                    "W110",
                    sent.index,
                    None,
                    (),
                    "sentence labeled 1 contains no event_type or event_mention",
                )

    if enabled("W111"):
        for trig in idx.triggers:
            label = doc.sentences[trig.span.sentence].label
            if label in (SentenceLabel.NON_EVENT, SentenceLabel.PLANNED):
                emit(
                    "W111",
                    trig.span.sentence,
                    trig.span,
                    (trig.id,),
                    f"{trig.tag.value} in a sentence labeled {int(label)}",
                )

    if enabled("W112"):
        token_words = cfg.lexicons.token_event_words
        token_typed: list[Annotation] = []
        descriptive_events: set[int] = set()
        for trig in idx.triggers:
            if idx.text(trig).casefold() in token_words:
                if trig.tag is TagId.EVENT_TYPE:
                    token_typed.append(trig)
            else:
                descriptive_events |= trig.events
        for trig in token_typed:
            if not trig.events.isdisjoint(descriptive_events):
                emit(
                    "W112",
                    trig.span.sentence,
                    trig.span,
                    (trig.id,),
                    f"token event word {idx.text(trig)!r} tagged event_type while its "
                    "event has a descriptive trigger",
                )

    if enabled("W120"):
        for sent_anns in idx.by_sentence.values():
            identifiers = [a for a in sent_anns if a.tag in LOCATION_IDENTIFIER_TAGS]
            if not identifiers:
                continue
            facilities = [a for a in sent_anns if a.tag in FACILITY_TAGS]
            for ident in identifiers:
                for fac in facilities:
                    if overlaps(ident.span, fac.span):
                        emit(
                            "W120",
                            ident.span.sentence,
                            ident.span,
                            (ident.id, fac.id),
                            f"{ident.tag.value} overlaps {fac.tag.value}; facility tags have priority",
                        )

    if enabled("W121"):
        used = idx.trigger_events | idx.argument_events
        if used:
            expected = set(range(1, max(used) + 1))
            missing = expected - used
            if missing:
                first_gap = min(missing)
                carrier = next(
                    ann
                    for ann in idx.anns
                    if any(n > first_gap for n in ann.events)
                    and focus_of(ann.tag) is not Focus.DOC_INFO
                )
                emit(
                    "W121",
                    carrier.span.sentence,
                    carrier.span,
                    (carrier.id,),
                    f"event numbers {sorted(used)} are not contiguous from 1 "
                    f"(missing {sorted(missing)})",
                )

    if enabled("W122"):
        for ann in idx.anns:
            if ann.events_from_comment and 1 in ann.events:
                emit(
                    "W122",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    "explicit 'Event 1' comment; the first event is not numbered",
                )

    if enabled("W130"):
        countries = cfg.lexicons.countries
        for ann in idx.anns:
            if ann.tag is TagId.EVENT_PLACE and idx.text(ann).casefold() in countries:
                emit(
                    "W130",
                    ann.span.sentence,
                    ann.span,
                    (ann.id,),
                    f"country name {idx.text(ann)!r} tagged as event_place",
                )

    if enabled("W131"):
        qualifier_seqs = cfg.lexicons.qualifier_token_sequences()
        for ann in idx.anns:
            if ann.tag is not TagId.PARTICIPANT_COUNT:
                continue
            toks = tuple(t.casefold() for t in idx.tokens(ann))
            for seq in qualifier_seqs:
                if toks[: len(seq)] == seq:
                    emit(
                        "W131",
                        ann.span.sentence,
                        ann.span,
                        (ann.id,),
                        f"participant_count begins with estimation qualifier {' '.join(seq)!r}",
                    )
                    break

    if enabled("W142"):
        sem_by_span: dict[TokenSpan, list[Annotation]] = defaultdict(list)
        for sem in idx.event_semantic:
            sem_by_span[sem.span].append(sem)
        categories_by_event: dict[int, dict[str, Annotation]] = defaultdict(dict)
        for trig in idx.triggers:
            sems = [
                sem
                for sem in sem_by_span.get(trig.span, ())
                if not sem.events.isdisjoint(trig.events)
            ]
            if len(sems) != 1:
                continue  # missing/stacked semantics are E021's case
            sem = sems[0]
            for n in trig.events & sem.events:
                categories_by_event[n].setdefault(sem.tag.value, trig)
        for number in sorted(categories_by_event):
            cats = categories_by_event[number]
            if len(cats) > 1:
                lead = min(cats.values(), key=annotation_sort_key)
                emit(
                    "W142",
                    lead.span.sentence,
                    lead.span,
                    tuple(sorted(t.id for t in cats.values())),
                    f"triggers of event {number} carry differing semantic categories: "
                    f"{sorted(cats)}",
                )

    if enabled("I150"):
        p_types = [a for a in idx.anns if a.tag is TagId.PARTICIPANT_TYPE]
        if p_types:
            partners = _semantic_partners(p_types, idx.participant_semantic)
            by_surface: dict[tuple[str, ...], dict[str, Annotation]] = defaultdict(dict)
            for head in p_types:
                sems = partners[head.id]
                if sems:
                    surface = tuple(t.casefold() for t in idx.tokens(head))
                    by_surface[surface].setdefault(sems[0].tag.value, head)
            for surface in sorted(by_surface):
                variants = by_surface[surface]
                if len(variants) > 1:
                    heads = sorted(variants.values(), key=annotation_sort_key)
                    lead = heads[1]
                    emit(
                        "I150",
                        lead.span.sentence,
                        lead.span,
                        tuple(h.id for h in heads),
                        f"participant surface {' '.join(surface)!r} carries differing "
                        f"semantic tags: {sorted(variants)}",
                    )

    found.sort(key=Diagnostic.sort_key)
    return found


@dataclass(frozen=True)
class CorpusReport:
    """Diagnostics for a whole corpus plus severity totals."""

    diagnostics: tuple[Diagnostic, ...]
    totals: Mapping[Severity, int]
    documents: int

    def count_at_or_above(self, threshold: Severity) -> int:
        floor = _SEVERITY_ORDER[threshold]
        return sum(
            n for sev, n in self.totals.items() if _SEVERITY_ORDER[sev] >= floor
        )


def validate_corpus(
    docs: Sequence[DocumentRecord], cfg: LintConfig = DEFAULT_CONFIG
) -> CorpusReport:
    """Validate documents in order and tally severities."""
    diagnostics: list[Diagnostic] = []
    for doc in docs:
        diagnostics.extend(validate_document(doc, cfg))
    totals = Counter(d.severity for d in diagnostics)
    for sev in Severity:
        totals.setdefault(sev, 0)
    return CorpusReport(
        diagnostics=tuple(diagnostics), totals=dict(totals), documents=len(docs)
    )
