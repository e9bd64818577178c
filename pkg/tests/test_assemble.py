import random

from glocon.assemble import (
    assemble_events,
    check_separation,
    export_rows,
    rows_to_csv,
    rows_to_jsonl,
    EXPORT_COLUMNS,
)
from glocon.io import parse_corpus, serialize_corpus
from glocon.model import (
    DocumentLabels,
    DocumentRecord,
    Focus,
    TagId,
    focus_of,
)
from golden_docs import ann, sent
from randdocs import random_document


def _doc(doc_id, sentences, annotations, labels=DocumentLabels()):
    return DocumentRecord(
        doc_id=doc_id, labels=labels, sentences=tuple(sentences), annotations=tuple(annotations)
    )


class TestGoldenAssembly:
    def test_bjp_two_records(self, bjp_doc):
        records = assemble_events(bjp_doc)
        assert [r.event_number for r in records] == [1, 2]
        first, second = records

        assert [t.text for t in first.times] == ["At noon"]
        assert [(o.text, o.semantic) for o in first.organizers] == [
            ("BJP", "political_party")
        ]
        assert [(p.text, p.semantic) for p in first.participants] == [
            ("workers", "people")
        ]
        assert [(t.text, t.is_type) for t in first.triggers] == [
            ("gathered", True),
            ("shouted slogans", False),
        ]
        assert first.semantic_category == "demonstration"
        assert [f.text for f in first.facilities] == ["in the square"]
        assert [t.text for t in first.targets] == ["Union Government"]
        assert first.places == ()

        assert [t.text for t in second.times] == ["last year's"]
        assert [(t.text, t.is_type) for t in second.triggers] == [
            ("attack", True),
            ("killed", False),
        ]
        assert second.semantic_category == "armed_militancy"
        assert [f.text for f in second.facilities] == ["at the train station"]
        assert [(p.text, p.semantic) for p in second.participants] == [
            ("militants", "militant")
        ]
        assert second.organizers == () and second.targets == ()

    def test_karnataka_three_records(self, karnataka):
        records = assemble_events(karnataka)
        assert [r.event_number for r in records] == [1, 2, 3]
        assert [[p.text for p in r.places] for r in records] == [
            ["Karnataka"],
            ["Bangalore"],
            ["Mysore"],
        ]
        assert records[0].organizers[0].semantic == "union"
        assert all(r.semantic_category == "demonstration" for r in records)

    def test_goldens_pass_separation_checks(self, bjp_doc, karnataka):
        assert check_separation(assemble_events(bjp_doc)) == []
        assert check_separation(assemble_events(karnataka)) == []


class TestAssemblyRules:
    def test_single_unnumbered_event(self):
        doc = _doc(
            "single",
            [sent(0, "Workers marched .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2),
                ann("p1", TagId.PARTICIPANT_TYPE, 0, 0, 1),
                ann("p1s", TagId.WORKER, 0, 0, 1),
            ],
        )
        records = assemble_events(doc)
        assert len(records) == 1
        assert records[0].event_number == 1

    def test_multi_numbered_annotation_in_both_records(self):
        doc = _doc(
            "shared",
            [sent(0, "Protesters marched in Delhi and Agra .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2, events={1, 2}),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2, events={1, 2}),
                ann("pl1", TagId.EVENT_PLACE, 0, 3, 4, events={1}),
                ann("pl2", TagId.EVENT_PLACE, 0, 5, 6, events={2}),
            ],
        )
        records = assemble_events(doc)
        assert [r.event_number for r in records] == [1, 2]
        assert all(t.text == "marched" for r in records for t in r.triggers)
        assert [p.text for p in records[0].places] == ["Delhi"]
        assert [p.text for p in records[1].places] == ["Agra"]

    def test_title_trigger_marked(self):
        doc = _doc(
            "title",
            [sent(0, "March in Delhi"), sent(1, "Protesters marched today .")],
            [
                ann("title", TagId.DOCUMENT_TITLE, 0, 0, 3),
                ann("te", TagId.EVENT_TYPE, 0, 0, 1),
                ann("tes", TagId.DEMONSTRATION, 0, 0, 1),
                ann("e1", TagId.EVENT_MENTION, 1, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 1, 1, 2),
            ],
        )
        records = assemble_events(doc)
        flags = {t.text: t.in_title for t in records[0].triggers}
        assert flags == {"March": True, "marched": False}

    def test_attribute_attachment_by_containment(self):
        doc = _doc(
            "attrs",
            [sent(0, "Hundreds of angry Maoist workers marched .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 5, 6),
                ann("e1s", TagId.DEMONSTRATION, 0, 5, 6),
                ann("p1", TagId.PARTICIPANT_TYPE, 0, 3, 5),  # "Maoist workers"
                ann("p1s", TagId.WORKER, 0, 3, 5),
                ann("id1", TagId.PARTICIPANT_IDEOLOGY, 0, 3, 4),  # inside the head
                ann("c1", TagId.PARTICIPANT_COUNT, 0, 0, 1),  # outside any head
            ],
        )
        record = assemble_events(doc)[0]
        participant = record.participants[0]
        assert [a.text for a in participant.attributes] == ["Maoist"]
        assert [a.text for a in record.unattached_attributes] == ["Hundreds"]

    def test_doc_info_tags_stay_out_of_events(self):
        doc = _doc(
            "pub",
            [sent(0, "Sep 8 , 2001"), sent(1, "Protesters marched .")],
            [
                ann("pub", TagId.EVENT_TIME_PUBLISHED, 0, 0, 4),
                ann("e1", TagId.EVENT_TYPE, 1, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 1, 1, 2),
            ],
        )
        record = assemble_events(doc)[0]
        assert record.times == ()

    def test_disagreeing_trigger_categories_yield_no_category(self):
        doc = _doc(
            "disagree",
            [sent(0, "Protesters marched and struck .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2),
                ann("e2", TagId.EVENT_MENTION, 0, 3, 4),
                ann("e2s", TagId.INDUSTRIAL_ACTION, 0, 3, 4),
            ],
        )
        assert assemble_events(doc)[0].semantic_category is None


class TestSeparation:
    def _twin_doc(self, second_place=None):
        annotations = [
            ann("e1", TagId.EVENT_TYPE, 0, 1, 2),
            ann("e1s", TagId.DEMONSTRATION, 0, 1, 2),
            ann("e2", TagId.EVENT_TYPE, 1, 1, 2, events={2}),
            ann("e2s", TagId.DEMONSTRATION, 1, 1, 2, events={2}),
        ]
        if second_place:
            annotations.append(ann("pl2", TagId.EVENT_PLACE, 1, 3, 4, events={2}))
        return _doc(
            "twins",
            [sent(0, "Protesters marched downtown ."), sent(1, "Protesters marched in Agra .")],
            annotations,
        )

    def test_identical_events_flagged(self):
        records = assemble_events(self._twin_doc())
        diags = check_separation(records)
        assert [d.rule for d in diags] == ["W140"]
        assert "events 1 and 2" in diags[0].message

    def test_any_axis_difference_suppresses_w140(self):
        records = assemble_events(self._twin_doc(second_place=True))
        assert check_separation(records) == []

    def test_dangling_event_number(self):
        doc = _doc(
            "dangling",
            [sent(0, "Protesters marched on Monday .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2),
                ann("t1", TagId.EVENT_TIME, 0, 2, 4, events={3}),
            ],
        )
        records = assemble_events(doc)
        assert [r.event_number for r in records] == [1, 3]
        rules = [d.rule for d in check_separation(records)]
        assert "E020" in rules and "W141" in rules


class TestExport:
    def test_bjp_rows(self, bjp_doc):
        rows = export_rows(assemble_events(bjp_doc))
        assert len(rows) == 2
        first, second = rows
        assert first["triggers"] == "gathered|shouted slogans"
        assert first["times"] == "At noon"
        assert first["organizers"] == "BJP"
        assert first["organizer_semantics"] == "political_party"
        assert first["participants"] == "workers"
        assert first["participant_semantics"] == "people"
        assert first["targets"] == "Union Government"
        assert first["doc_protest"] == "protest"
        assert first["doc_violent"] == "violent"
        assert first["doc_demand"] == ""
        assert second["times"] == "last year's"
        assert second["facilities"] == "at the train station"
        assert second["semantic_category"] == "armed_militancy"

    def test_empty_export_is_header_only(self):
        assert rows_to_csv([]) == ",".join(EXPORT_COLUMNS) + "\n"
        assert rows_to_jsonl([]) == ""

    def test_multi_numbered_text_in_both_rows(self):
        doc = _doc(
            "both-rows",
            [sent(0, "Protesters marched in Delhi and Agra .")],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2, events={1, 2}),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2, events={1, 2}),
                ann("pl1", TagId.EVENT_PLACE, 0, 3, 4, events={1}),
                ann("pl2", TagId.EVENT_PLACE, 0, 5, 6, events={2}),
            ],
        )
        rows = export_rows(assemble_events(doc))
        assert [row["triggers"] for row in rows] == ["marched", "marched"]

    def test_rows_sorted_by_doc_and_event(self, bjp_doc, karnataka):
        records = assemble_events(karnataka) + assemble_events(bjp_doc)
        rows = export_rows(records)
        keys = [(row["doc_id"], int(row["event_number"])) for row in rows]
        assert keys == sorted(keys)

    def test_csv_quoting_round_trip(self):
        import csv
        import io

        doc = _doc(
            "quoting",
            [sent(0, 'Protesters marched , shouting " enough " .')],
            [
                ann("e1", TagId.EVENT_TYPE, 0, 1, 2),
                ann("e1s", TagId.DEMONSTRATION, 0, 1, 2),
                ann("e2", TagId.EVENT_MENTION, 0, 3, 7),
                ann("e2s", TagId.DEMONSTRATION, 0, 3, 7),
            ],
        )
        text = rows_to_csv(export_rows(assemble_events(doc)))
        parsed = list(csv.DictReader(io.StringIO(text)))
        assert parsed[0]["triggers"] == 'marched|shouting " enough "'


class TestAssemblyProperties:
    def _content_contributions(self, doc):
        total = 0
        for a in doc.annotations:
            focus = focus_of(a.tag)
            if focus is Focus.DOC_INFO or focus in (
                Focus.EVENT_SEMANTIC,
                Focus.PARTICIPANT_SEMANTIC,
                Focus.ORGANIZER_SEMANTIC,
            ):
                continue
            total += len(a.events)
        return total

    def _record_population(self, record):
        return (
            len(record.triggers)
            + len(record.times)
            + len(record.places)
            + len(record.facilities)
            + len(record.urban_rural_markers)
            + len(record.targets)
            + len(record.participants)
            + len(record.organizers)
            + sum(len(p.attributes) for p in record.participants)
            + sum(len(o.attributes) for o in record.organizers)
            + len(record.unattached_attributes)
        )

    def test_count_conservation_on_random_docs(self):
        for seed in range(150):
            doc = random_document(random.Random(seed))
            records = assemble_events(doc)
            placed = sum(self._record_population(r) for r in records)
            assert placed == self._content_contributions(doc), f"seed {seed}"

    def test_records_strictly_sorted(self):
        for seed in range(50):
            doc = random_document(random.Random(seed))
            numbers = [r.event_number for r in assemble_events(doc)]
            assert numbers == sorted(set(numbers))

    def test_idempotent_through_serialization(self):
        for seed in range(50):
            doc = random_document(random.Random(seed))
            reparsed, errors = parse_corpus(serialize_corpus([doc]))
            assert errors == []
            assert assemble_events(reparsed[0]) == assemble_events(doc)
