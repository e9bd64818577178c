import json

from glocon.cli import EXIT_FINDINGS, EXIT_IO, EXIT_OK, EXIT_USAGE, corpus_stats, run
from golden_docs import bjp_square_doc, karnataka_doc
from rule_fixtures import RULE_FIXTURES


class TestStats:
    def test_empty_corpus(self):
        stats = corpus_stats([])
        assert stats.documents == 0
        assert stats.annotations == 0
        assert stats.events_total == 0
        assert dict(stats.tag_counts) == {}

    def test_bjp_counts(self, bjp_doc):
        stats = corpus_stats([bjp_doc])
        assert stats.events_per_doc["bjp-square"] == 2
        assert stats.tag_counts["event_type"] == 2
        assert stats.tag_counts["event_mention"] == 2
        assert stats.protest_labels == {"protest": 1}

    def test_counts_match_recount(self):
        from randdocs import random_corpus

        docs = random_corpus(20, seed=13)
        stats = corpus_stats(docs)
        assert stats.documents == 20
        assert stats.annotations == sum(len(d.annotations) for d in docs)
        assert stats.sentences == sum(len(d.sentences) for d in docs)
        recount = {}
        for doc in docs:
            for a in doc.annotations:
                recount[a.tag.value] = recount.get(a.tag.value, 0) + 1
        assert dict(stats.tag_counts) == recount
        assert stats.events_total == sum(stats.events_per_doc.values())


class TestValidateCommand:
    def test_clean_corpus_exits_zero(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc(), karnataka_doc()])
        assert run(["validate", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "0 errors" in out

    def test_errors_fail_with_one(self, corpus_file):
        bad, _ = RULE_FIXTURES["E021"]
        path = corpus_file([bad])
        assert run(["validate", path, "--fail-on", "error"]) == EXIT_FINDINGS

    def test_warnings_pass_unless_requested(self, corpus_file):
        bad, _ = RULE_FIXTURES["W103"]
        path = corpus_file([bad])
        assert run(["validate", path]) == EXIT_OK
        assert run(["validate", path, "--fail-on", "warning"]) == EXIT_FINDINGS

    def test_text_output_format(self, corpus_file, capsys):
        bad, _ = RULE_FIXTURES["W103"]
        path = corpus_file([bad])
        run(["validate", path])
        out = capsys.readouterr().out
        assert "w103-bad:0:3-5 W103 warning" in out

    def test_json_payload_on_stdout_summary_on_stderr(self, corpus_file, capsys):
        bad, _ = RULE_FIXTURES["W103"]
        path = corpus_file([bad])
        assert run(["validate", path, "--format", "json"]) == EXIT_OK
        captured = capsys.readouterr()
        payload = json.loads(captured.out)
        assert payload[0]["rule"] == "W103"
        assert "warnings" in captured.err
        assert "warnings" not in captured.out

    def test_missing_file_exits_three(self, capsys):
        assert run(["validate", "no-such-file.glocon.jsonl"]) == EXIT_IO
        assert "cannot read" in capsys.readouterr().err

    def test_parse_errors_exit_three(self, tmp_path, capsys):
        path = tmp_path / "broken.glocon.jsonl"
        path.write_text('{"doc_id": "ok", "sentences": []}\nnot json\n')
        assert run(["validate", str(path)]) == EXIT_IO
        assert "malformed_record" in capsys.readouterr().err

    def test_config_flag(self, corpus_file, tmp_path):
        bad, _ = RULE_FIXTURES["W103"]
        corpus = corpus_file([bad])
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"disabled_rules": ["W103"]}))
        assert run(["validate", corpus, "--config", str(cfg), "--fail-on", "warning"]) == EXIT_OK

    def test_bad_config_is_usage_error(self, corpus_file, tmp_path):
        corpus = corpus_file([bjp_square_doc()])
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"disabled_rules": ["Z999"]}))
        assert run(["validate", corpus, "--config", str(cfg)]) == EXIT_USAGE


class TestAssembleCommand:
    def test_csv_to_stdout(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["assemble", path]) == EXIT_OK
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0].startswith("doc_id,event_number,")
        assert len(lines) == 3
        assert "gathered|shouted slogans" in lines[1]

    def test_jsonl_to_file(self, corpus_file, tmp_path, capsys):
        path = corpus_file([karnataka_doc()])
        out_path = tmp_path / "events.jsonl"
        assert run(["assemble", path, "--format", "jsonl", "--out", str(out_path)]) == EXIT_OK
        rows = [json.loads(line) for line in out_path.read_text().splitlines()]
        assert [r["places"] for r in rows] == ["Karnataka", "Bangalore", "Mysore"]
        assert capsys.readouterr().out == ""  # payload went to the file


class TestAgreeCommand:
    def test_doc_level_self_agreement(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc(), karnataka_doc()])
        assert run(["agree", path, path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "doc_protest" in out
        assert "1.0000" in out

    def test_token_level_json(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["agree", path, path, "--level", "token", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["micro"]["f1"] == 1.0
        assert payload["mode"] == "strict"

    def test_sentence_level(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["agree", path, path, "--level", "sentence"]) == EXIT_OK
        assert "sentence" in capsys.readouterr().out

    def test_lenient_mode_flag(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["agree", path, path, "--level", "token", "--mode", "lenient"]) == EXIT_OK
        assert "mode=lenient" in capsys.readouterr().out


class TestUsage:
    def test_unknown_flag_is_usage_error(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["validate", path, "--frobnicate"]) == EXIT_USAGE

    def test_unknown_subcommand(self):
        assert run(["annotate"]) == EXIT_USAGE

    def test_bad_choice_value(self, corpus_file):
        path = corpus_file([bjp_square_doc()])
        assert run(["validate", path, "--format", "xml"]) == EXIT_USAGE

    def test_stats_text_and_json(self, corpus_file, capsys):
        path = corpus_file([bjp_square_doc()])
        assert run(["stats", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "documents:   1" in out
        assert run(["stats", path, "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["events_total"] == 2
        assert payload["tag_counts"]["facility_type"] == 2
