import json

import pytest

from qgforge.ingestion import (
    CorpusManifest,
    FilterRule,
    apply_filters,
    default_filter_rules,
    ingest_boolean,
    ingest_dataset,
    ingest_multiple_choice,
    ingest_span_qa,
    ingest_unified,
)
from qgforge.records import AnswerType, read_records, validate_record


def read_lines(path):
    return path.read_text(encoding="utf-8").splitlines()


class TestSpanAdapter:
    def test_one_record_per_qa_entry(self, data_dir):
        result = ingest_span_qa(read_lines(data_dir / "span_fixture.jsonl"), "demo", "train")
        assert result.manifest.accepted_count == 2
        assert [r.id for r in result.records] == ["q1", "q2"]
        assert all(r.answer_type is AnswerType.EXTRACTIVE for r in result.records)

    def test_detected_answers_fallback(self, data_dir):
        result = ingest_span_qa(read_lines(data_dir / "span_fixture.jsonl"), "demo", "train")
        assert result.records[1].answers == ("a mouse", "a lit candle")

    def test_abstractive_configuration(self, data_dir):
        result = ingest_span_qa(
            read_lines(data_dir / "span_fixture.jsonl"), "demo", "train",
            answer_type=AnswerType.ABSTRACTIVE,
        )
        assert all(r.answer_type is AnswerType.ABSTRACTIVE for r in result.records)

    def test_malformed_line_reported_with_number_and_stream_continues(self):
        lines = [
            '{"context": "the cat sat", "qas": [{"qid": "a", "question": "who sat?", "answers": ["the cat"]}]}',
            "",
            "not json",
            '{"context": "a dog ran", "qas": [{"qid": "b", "question": "who ran?", "answers": ["a dog"]}]}',
        ]
        result = ingest_span_qa(lines, "demo", "train")
        assert result.manifest.accepted_count == 2
        assert result.manifest.rejected == {"malformed_line": 1}
        assert any(e.line_no == 3 for e in result.errors)

    def test_header_line_skipped_and_not_counted(self):
        lines = [
            '{"header": {"dataset": "demo"}}',
            '{"context": "the cat sat", "qas": [{"qid": "a", "question": "who sat?", "answers": ["the cat"]}]}',
        ]
        result = ingest_span_qa(lines, "demo", "train")
        assert result.manifest.accepted_count == 1
        assert result.manifest.raw_read == 1

    def test_conservation(self, data_dir):
        result = ingest_span_qa(read_lines(data_dir / "span_fixture.jsonl"), "demo", "train")
        assert result.manifest.raw_read == result.manifest.accepted_count + sum(
            result.manifest.rejected.values()
        )

    def test_determinism_equal_checksums(self, data_dir):
        lines = read_lines(data_dir / "span_fixture.jsonl")
        a = ingest_span_qa(lines, "demo", "train")
        b = ingest_span_qa(lines, "demo", "train")
        assert a.manifest.checksum == b.manifest.checksum
        assert a.manifest.to_dict() == b.manifest.to_dict()

    def test_normalization_applied(self):
        lines = ['{"context": "air  is \\n necessary", "qas": [{"qid": "a", "question": "what  is\\nneeded?", "answers": ["air"]}]}']
        result = ingest_span_qa(lines, "demo", "train")
        record = result.records[0]
        assert record.context == "air is necessary"
        assert record.question == "what is needed?"


class TestMultipleChoiceAdapter:
    def test_fixture_counts(self, data_dir):
        result = ingest_multiple_choice(read_lines(data_dir / "mc_fixture.json"), "mctest", "train")
        assert result.manifest.accepted_count == 2
        assert result.manifest.rejected == {"missing_correct_option": 1}

    def test_integer_marker_indexes_options(self):
        items = json.dumps([{"question": "pick one?", "options": ["red", "blue"], "answer": 1, "context": "blue and red things"}])
        result = ingest_multiple_choice([items], "demo", "train")
        assert result.records[0].answers[0] == "blue"
        assert result.records[0].correct_choice == 1

    def test_letter_and_text_markers(self):
        items = json.dumps([
            {"question": "q1?", "options": ["red", "blue"], "answer": "B", "context": "c"},
            {"question": "q2?", "options": ["red", "blue"], "answer": "red", "context": "c"},
        ])
        result = ingest_multiple_choice([items], "demo", "train")
        assert result.records[0].answers[0] == "blue"
        assert result.records[1].answers[0] == "red"

    def test_ambiguous_marker_rejected(self):
        items = json.dumps([
            {"question": "q?", "options": ["red", "red"], "answer": "red", "context": "c"},
            {"question": "q?", "options": ["red", "blue"], "answer": 9, "context": "c"},
        ])
        result = ingest_multiple_choice([items], "demo", "train")
        assert result.manifest.accepted_count == 0
        assert result.manifest.rejected == {"ambiguous_correct_option": 2}

    def test_choices_preserved(self, data_dir):
        result = ingest_multiple_choice(read_lines(data_dir / "mc_fixture.json"), "mctest", "train")
        assert result.records[0].choices == ("a candle", "a mouse", "a plant")


class TestBooleanAdapter:
    def test_fixture_counts(self, data_dir):
        result = ingest_boolean(read_lines(data_dir / "boolean_fixture.jsonl"), "boolq", "train")
        assert result.manifest.accepted_count == 2
        assert result.manifest.rejected == {"missing_label": 1}

    def test_true_maps_to_yes(self):
        line = json.dumps({"question": "does it work", "passage": "it works", "answer": True})
        result = ingest_boolean([line], "demo", "train")
        record = result.records[0]
        assert record.answers == ("yes",)
        assert record.boolean_value == "yes"
        assert record.answer_type is AnswerType.YES_NO

    def test_string_labels(self):
        lines = [
            json.dumps({"question": "a", "passage": "p", "answer": "no"}),
            json.dumps({"question": "b", "passage": "p", "label": "TRUE"}),
        ]
        result = ingest_boolean(lines, "demo", "train")
        assert [r.answers[0] for r in result.records] == ["no", "yes"]


class TestUnifiedAdapter:
    def test_pass_through(self, data_dir):
        result = ingest_unified(read_lines(data_dir / "golden_records.jsonl"))
        assert result.manifest.accepted_count == 6
        assert result.manifest.dataset == "demo"


class TestApplyFilters:
    def test_acceptance_fixture_tallies(self, data_dir):
        with open(data_dir / "filter_fixture.jsonl", encoding="utf-8") as fp:
            records = list(read_records(fp))
        assert len(records) == 10
        kept, tallies = apply_filters(records)
        assert len(kept) == 6
        assert tallies == {"cloze": 2, "unanswerable": 1, "non_self_contained_mc": 1}

    def test_kept_question_passes(self, data_dir):
        with open(data_dir / "filter_fixture.jsonl", encoding="utf-8") as fp:
            records = list(read_records(fp))
        kept, _ = apply_filters(records)
        questions = [r.question for r in kept]
        assert "Who proved that air is necessary for combustion?" in questions

    def test_disabled_rule_not_applied(self, data_dir):
        with open(data_dir / "filter_fixture.jsonl", encoding="utf-8") as fp:
            records = list(read_records(fp))
        rules = (
            FilterRule("cloze", enabled=False),
            FilterRule("unanswerable"),
            FilterRule("non_self_contained_mc"),
        )
        kept, tallies = apply_filters(records, rules)
        assert "cloze" not in tallies
        assert len(kept) == 8

    def test_duplicate_rule_ids_rejected(self):
        with pytest.raises(ValueError):
            apply_filters([], (FilterRule("cloze"), FilterRule("cloze")))

    def test_mask_and_underscore_patterns(self, data_dir):
        with open(data_dir / "golden_records.jsonl", encoding="utf-8") as fp:
            base = next(read_records(fp))
        from dataclasses import replace

        masked = replace(base, question="The [MASK] rose quickly.")
        kept, tallies = apply_filters([masked])
        assert kept == [] and tallies == {"cloze": 1}


class TestIngestDataset:
    def test_composed_pipeline_emits_only_valid_records(self, data_dir):
        result = ingest_dataset(data_dir / "filter_fixture.jsonl", "unified", "demo", "train")
        assert result.manifest.accepted_count == 6
        assert all(validate_record(r).valid for r in result.records)
        assert result.manifest.rejected == {
            "cloze": 2, "unanswerable": 1, "non_self_contained_mc": 1,
        }

    def test_invalid_records_tallied(self, tmp_path):
        bad = {
            "id": "x", "dataset": "d", "split": "train",
            "context": "the cat sat", "question": "who sat?",
            "answers": ["a dog"], "answer_type": "extractive",
        }
        path = tmp_path / "bad.jsonl"
        path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
        result = ingest_dataset(path, "unified", "d", "train")
        assert result.manifest.accepted_count == 0
        assert result.manifest.rejected == {"invalid_record": 1}

    def test_conservation_through_composition(self, data_dir):
        result = ingest_dataset(data_dir / "filter_fixture.jsonl", "unified", "demo", "train")
        assert result.manifest.raw_read == 10

    def test_unknown_format(self, data_dir):
        with pytest.raises(ValueError):
            ingest_dataset(data_dir / "span_fixture.jsonl", "tsv", "d", "train")


def test_manifest_round_trip():
    manifest = CorpusManifest("d", "train", 5, {"cloze": 2}, "abc")
    assert CorpusManifest.from_dict(manifest.to_dict()) == manifest
    assert manifest.raw_read == 7


def test_default_rules_unique_and_enabled():
    rules = default_filter_rules()
    assert len({r.id for r in rules}) == 3
    assert all(r.enabled for r in rules)
