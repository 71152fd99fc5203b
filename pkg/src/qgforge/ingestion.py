"""Source-corpus adapters, training-data filters and manifests.

Three adapter shapes cover the source layouts this toolkit reads --
span-QA JSONL (one context with a list of QA entries per line, optional
header line), multiple-choice JSON and boolean JSONL -- plus a
pass-through adapter for the unified record format itself.

Every run is conservative: raw examples read == accepted + sum(rejected),
and the manifest checksum hashes the accepted records in order, so two
runs over the same bytes are provably identical.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .records import (
    AnswerType,
    QARecord,
    normalize_text,
    record_from_dict,
    record_to_json,
    validate_record,
)

# adapter-level rejection reasons
R_MALFORMED = "malformed_line"
R_MISSING_MARKER = "missing_correct_option"
R_AMBIGUOUS_MARKER = "ambiguous_correct_option"
R_MISSING_LABEL = "missing_label"
R_INVALID = "invalid_record"

# filter rule ids
F_CLOZE = "cloze"
F_UNANSWERABLE = "unanswerable"
F_NON_SELF_CONTAINED_MC = "non_self_contained_mc"

DEFAULT_CLOZE_PATTERNS = ("@placeholder", r"_{3,}", r"\[MASK\]")
DEFAULT_MC_REFERENCE_PHRASES = ("which of the following", "which one of these")


@dataclass(frozen=True)
class FilterRule:
    id: str
    enabled: bool = True


def default_filter_rules() -> tuple[FilterRule, ...]:
    return (
        FilterRule(F_CLOZE),
        FilterRule(F_UNANSWERABLE),
        FilterRule(F_NON_SELF_CONTAINED_MC),
    )


@dataclass
class CorpusManifest:
    dataset: str
    split: str
    accepted_count: int
    rejected: dict[str, int]
    checksum: str

    @property
    def raw_read(self) -> int:
        return self.accepted_count + sum(self.rejected.values())

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "split": self.split,
            "accepted_count": self.accepted_count,
            "rejected": dict(self.rejected),
            "checksum": self.checksum,
        }

    @staticmethod
    def from_dict(obj: dict) -> "CorpusManifest":
        return CorpusManifest(
            dataset=str(obj["dataset"]),
            split=str(obj["split"]),
            accepted_count=int(obj["accepted_count"]),
            rejected={str(k): int(v) for k, v in obj.get("rejected", {}).items()},
            checksum=str(obj.get("checksum", "")),
        )


@dataclass(frozen=True)
class LineError:
    line_no: int
    message: str


@dataclass
class IngestResult:
    records: list[QARecord]
    manifest: CorpusManifest
    errors: list[LineError] = field(default_factory=list)


def records_checksum(records: Iterable[QARecord]) -> str:
    h = hashlib.sha256()
    for record in records:
        h.update(record_to_json(record).encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def _build_result(dataset, split, records, rejected, errors) -> IngestResult:
    manifest = CorpusManifest(
        dataset=dataset,
        split=split,
        accepted_count=len(records),
        rejected={k: v for k, v in sorted(rejected.items()) if v},
        checksum=records_checksum(records),
    )
    return IngestResult(records=records, manifest=manifest, errors=errors)


def _bump(rejected: dict[str, int], reason: str, n: int = 1) -> None:
    rejected[reason] = rejected.get(reason, 0) + n


def _norm_answers(values: Iterable) -> tuple[str, ...]:
    seen = set()
    answers = []
    for value in values:
        text = normalize_text(str(value))
        if text and text not in seen:
            seen.add(text)
            answers.append(text)
    return tuple(answers)


def ingest_span_qa(
    lines: Iterable[str],
    dataset: str,
    split: str,
    answer_type: AnswerType = AnswerType.EXTRACTIVE,
) -> IngestResult:
    """Parse span-QA JSONL: optional header line, then one JSON object per
    line holding a context and a ``qas`` list. One record per QA entry.

    Configure ``answer_type=ABSTRACTIVE`` for free-form-answer sources.
    A malformed line is reported with its line number, counted as one
    rejected example, and the stream keeps going.
    """
    records: list[QARecord] = []
    rejected: dict[str, int] = {}
    errors: list[LineError] = []
    first_content_line = True
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(LineError(line_no, f"not valid JSON: {exc}"))
            _bump(rejected, R_MALFORMED)
            first_content_line = False
            continue
        if first_content_line:
            first_content_line = False
            if isinstance(obj, dict) and "header" in obj:
                continue
        if not isinstance(obj, dict) or "context" not in obj or not isinstance(obj.get("qas"), list):
            errors.append(LineError(line_no, "expected an object with 'context' and 'qas'"))
            _bump(rejected, R_MALFORMED)
            continue
        context = normalize_text(str(obj["context"]))
        for k, qa in enumerate(obj["qas"]):
            if not isinstance(qa, dict) or "question" not in qa:
                errors.append(LineError(line_no, f"qas[{k}]: missing question"))
                _bump(rejected, R_MALFORMED)
                continue
            answers = qa.get("answers")
            if not answers:
                answers = [d.get("text", "") for d in qa.get("detected_answers", []) if isinstance(d, dict)]
            if qa.get("is_impossible") or qa.get("unanswerable"):
                answers = []
            qid = str(qa.get("qid") or qa.get("id") or f"{dataset}-{split}-{line_no}-{k}")
            records.append(
                QARecord(
                    id=qid,
                    dataset=dataset,
                    split=split,
                    context=context,
                    question=normalize_text(str(qa["question"])),
                    answers=_norm_answers(answers),
                    answer_type=answer_type,
                )
            )
    return _build_result(dataset, split, records, rejected, errors)


def _resolve_choice(marker, choices: tuple[str, ...]) -> int | None:
    if isinstance(marker, bool):
        return None
    if isinstance(marker, int):
        return marker if 0 <= marker < len(choices) else None
    if isinstance(marker, str):
        text = marker.strip()
        if len(text) == 1 and text.isalpha():
            idx = ord(text.upper()) - ord("A")
            return idx if 0 <= idx < len(choices) else None
        hits = [i for i, c in enumerate(choices) if c == normalize_text(text)]
        return hits[0] if len(hits) == 1 else None
    return None


def ingest_multiple_choice(lines: Iterable[str], dataset: str, split: str) -> IngestResult:
    """Parse a multiple-choice JSON document (a list of items, or an object
    with a ``data`` list). Distractor options are kept on the record but
    the canonical answer is the correct option's text.

    The correct-option marker may be an integer index, a letter, or the
    exact option text; records with a missing or unresolvable marker are
    rejected.
    """
    records: list[QARecord] = []
    rejected: dict[str, int] = {}
    errors: list[LineError] = []
    text = "\n".join(lines)
    try:
        doc = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise ValueError(f"multiple-choice input is not valid JSON: {exc}") from exc
    items = doc.get("data") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise ValueError("multiple-choice input must be a list or an object with 'data'")

    for k, item in enumerate(items):
        if not isinstance(item, dict) or "question" not in item:
            errors.append(LineError(k, "item is not an object with a question"))
            _bump(rejected, R_MALFORMED)
            continue
        raw_choices = item.get("options") or item.get("choices") or []
        choices = tuple(normalize_text(str(c)) for c in raw_choices)
        marker = None
        for key in ("answer", "correct", "label"):
            if key in item:
                marker = item[key]
                break
        if marker is None:
            errors.append(LineError(k, "no correct-option marker"))
            _bump(rejected, R_MISSING_MARKER)
            continue
        idx = _resolve_choice(marker, choices) if choices else None
        if idx is None:
            errors.append(LineError(k, f"cannot resolve correct option from {marker!r}"))
            _bump(rejected, R_AMBIGUOUS_MARKER)
            continue
        context = ""
        for key in ("context", "story", "passage"):
            if key in item:
                context = normalize_text(str(item[key]))
                break
        records.append(
            QARecord(
                id=str(item.get("id") or f"{dataset}-{split}-{k}"),
                dataset=dataset,
                split=split,
                context=context,
                question=normalize_text(str(item["question"])),
                answers=(choices[idx],),
                answer_type=AnswerType.MULTIPLE_CHOICE,
                choices=choices,
                correct_choice=idx,
            )
        )
    return _build_result(dataset, split, records, rejected, errors)


_BOOL_WORDS = {"true": "yes", "yes": "yes", "false": "no", "no": "no"}


def ingest_boolean(lines: Iterable[str], dataset: str, split: str) -> IngestResult:
    """Parse boolean JSONL: one object per line with a question, a passage
    and a true/false label. Records without a usable label are rejected."""
    records: list[QARecord] = []
    rejected: dict[str, int] = {}
    errors: list[LineError] = []
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(LineError(line_no, f"not valid JSON: {exc}"))
            _bump(rejected, R_MALFORMED)
            continue
        if not isinstance(obj, dict) or "question" not in obj:
            errors.append(LineError(line_no, "expected an object with a question"))
            _bump(rejected, R_MALFORMED)
            continue
        label = obj.get("answer", obj.get("label"))
        word = None
        if isinstance(label, bool):
            word = "yes" if label else "no"
        elif isinstance(label, str):
            word = _BOOL_WORDS.get(label.strip().lower())
        if word is None:
            errors.append(LineError(line_no, "missing or non-boolean label"))
            _bump(rejected, R_MISSING_LABEL)
            continue
        context = ""
        for key in ("passage", "context"):
            if key in obj:
                context = normalize_text(str(obj[key]))
                break
        records.append(
            QARecord(
                id=str(obj.get("id") or f"{dataset}-{split}-{line_no}"),
                dataset=dataset,
                split=split,
                context=context,
                question=normalize_text(str(obj["question"])),
                answers=(word,),
                answer_type=AnswerType.YES_NO,
                boolean_value=word,
            )
        )
    return _build_result(dataset, split, records, rejected, errors)


def ingest_unified(lines: Iterable[str], dataset: str = "", split: str = "") -> IngestResult:
    """Pass-through adapter for files already in the unified JSONL format."""
    records: list[QARecord] = []
    rejected: dict[str, int] = {}
    errors: list[LineError] = []
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = record_from_dict(json.loads(line))
        except (json.JSONDecodeError, ValueError, KeyError) as exc:
            errors.append(LineError(line_no, str(exc)))
            _bump(rejected, R_MALFORMED)
            continue
        records.append(record)
        if not dataset:
            dataset = record.dataset
        if not split:
            split = record.split
    return _build_result(dataset, split, records, rejected, errors)


def apply_filters(
    records: Iterable[QARecord],
    rules: Iterable[FilterRule] | None = None,
    cloze_patterns: tuple[str, ...] = DEFAULT_CLOZE_PATTERNS,
    mc_reference_phrases: tuple[str, ...] = DEFAULT_MC_REFERENCE_PHRASES,
) -> tuple[list[QARecord], dict[str, int]]:
    """Drop records unfit for question-generation training.

    - ``cloze``: the question contains a blank placeholder.
    - ``unanswerable``: the record has no answers (adapters empty the
      answer list when the source flags a question unanswerable).
    - ``non_self_contained_mc``: a multiple-choice question that refers to
      its own option list.

    Each dropped record is tallied under the first matching rule id.
    """
    rule_list = list(rules) if rules is not None else list(default_filter_rules())
    ids = [r.id for r in rule_list]
    if len(ids) != len(set(ids)):
        raise ValueError("filter rule ids must be unique")
    enabled = {r.id for r in rule_list if r.enabled}
    cloze_re = [re.compile(p) for p in cloze_patterns]
    phrases = tuple(p.lower() for p in mc_reference_phrases)

    kept: list[QARecord] = []
    tallies: dict[str, int] = {}
    for record in records:
        if F_CLOZE in enabled and any(p.search(record.question) for p in cloze_re):
            _bump(tallies, F_CLOZE)
            continue
        if F_UNANSWERABLE in enabled and not record.answers:
            _bump(tallies, F_UNANSWERABLE)
            continue
        if (
            F_NON_SELF_CONTAINED_MC in enabled
            and record.answer_type is AnswerType.MULTIPLE_CHOICE
            and any(p in record.question.lower() for p in phrases)
        ):
            _bump(tallies, F_NON_SELF_CONTAINED_MC)
            continue
        kept.append(record)
    return kept, tallies


ADAPTERS = {
    "span": ingest_span_qa,
    "mc": ingest_multiple_choice,
    "boolean": ingest_boolean,
    "unified": ingest_unified,
}


def ingest_dataset(
    path: str | Path,
    fmt: str,
    dataset: str,
    split: str,
    answer_type: AnswerType = AnswerType.EXTRACTIVE,
    rules: Iterable[FilterRule] | None = None,
    cloze_patterns: tuple[str, ...] = DEFAULT_CLOZE_PATTERNS,
) -> IngestResult:
    """Full ingestion pipeline: adapter, filters, then strict validation.

    Every record in the result passes validation; everything else lands in
    the manifest's rejection tallies, so the conservation invariant holds
    for the composed run as well as for the adapter stage.
    """
    if fmt not in ADAPTERS:
        raise ValueError(f"unknown ingest format: {fmt!r} (expected one of {sorted(ADAPTERS)})")
    with open(path, encoding="utf-8") as fp:
        if fmt == "span":
            stage = ingest_span_qa(fp, dataset, split, answer_type)
        else:
            stage = ADAPTERS[fmt](fp, dataset, split)

    filtered, tallies = apply_filters(stage.records, rules, cloze_patterns)

    accepted: list[QARecord] = []
    rejected = dict(stage.manifest.rejected)
    for rule_id, count in tallies.items():
        _bump(rejected, rule_id, count)
    errors = list(stage.errors)
    for record in filtered:
        report = validate_record(record)
        if report.valid:
            accepted.append(record)
        else:
            _bump(rejected, R_INVALID)
            errors.append(LineError(0, f"record {record.id}: {', '.join(report.violations)}"))
    return _build_result(dataset, split, accepted, rejected, errors)
