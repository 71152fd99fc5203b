"""Unified QA record schema and validation.

Every source corpus is normalized into :class:`QARecord`, a single flat
shape covering extractive, abstractive, multiple-choice and yes/no answers.
Validation never raises on bad content: it reports which invariants a
record violates so callers can decide whether to drop, repair or fail.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, TextIO


class AnswerType(str, Enum):
    EXTRACTIVE = "extractive"
    ABSTRACTIVE = "abstractive"
    MULTIPLE_CHOICE = "multiple_choice"
    YES_NO = "yes_no"


# Violation identifiers reported by validate_record.
V_EMPTY_CONTEXT = "empty-context"
V_EMPTY_QUESTION = "empty-question"
V_EMPTY_ANSWERS = "empty-answers"
V_EMPTY_ANSWER_TEXT = "empty-answer-text"
V_RAW_NEWLINE = "raw-newline"
V_EXTRACTIVE_SUBSTRING = "extractive-substring"
V_YN_BOOLEAN_VALUE = "yn-boolean-value"
V_YN_CANONICAL_ANSWER = "yn-canonical-answer"
V_MC_CHOICES_EMPTY = "mc-choices-empty"
V_MC_CHOICE_RANGE = "mc-correct-choice-range"
V_MC_ANSWER_MISMATCH = "mc-answer-choice-mismatch"


@dataclass(frozen=True)
class QARecord:
    """One normalized QA example.

    ``answers`` holds every accepted reference text; the first entry is the
    canonical answer used for encoding, the rest are kept as evaluation
    references. ``choices``/``correct_choice`` are only meaningful for
    multiple-choice records, ``boolean_value`` only for yes/no records.
    """

    id: str
    dataset: str
    split: str
    context: str
    question: str
    answers: tuple[str, ...]
    answer_type: AnswerType
    choices: tuple[str, ...] | None = None
    correct_choice: int | None = None
    boolean_value: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    record_id: str
    verdict: str  # "valid" | "invalid"
    violations: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"


def normalize_text(text: str) -> str:
    """Normalize to NFC and collapse all whitespace runs to single spaces.

    Newlines are folded away (the literal newline is reserved as the
    answer/context separator in encoded inputs). Idempotent.
    """
    return " ".join(unicodedata.normalize("NFC", text).split())


def validate_record(record: QARecord) -> ValidationReport:
    """Check every schema invariant and report all violations at once.

    Invalidity is a result, not an error: malformed records come back with
    ``verdict="invalid"`` and the full list of violated invariant ids.
    """
    violations: list[str] = []

    if not record.context:
        violations.append(V_EMPTY_CONTEXT)
    if not record.question:
        violations.append(V_EMPTY_QUESTION)
    if not record.answers:
        violations.append(V_EMPTY_ANSWERS)
    elif any(not a for a in record.answers):
        violations.append(V_EMPTY_ANSWER_TEXT)

    texts = (record.context, record.question, *record.answers)
    if any("\n" in t or "\r" in t for t in texts):
        violations.append(V_RAW_NEWLINE)

    if record.answer_type is AnswerType.EXTRACTIVE and record.answers:
        ctx = normalize_text(record.context)
        if not any(normalize_text(a) in ctx for a in record.answers):
            violations.append(V_EXTRACTIVE_SUBSTRING)

    if record.answer_type is AnswerType.YES_NO:
        if record.boolean_value not in ("yes", "no"):
            violations.append(V_YN_BOOLEAN_VALUE)
        if not record.answers or record.answers[0] not in ("yes", "no"):
            violations.append(V_YN_CANONICAL_ANSWER)

    if record.answer_type is AnswerType.MULTIPLE_CHOICE:
        if not record.choices:
            violations.append(V_MC_CHOICES_EMPTY)
        elif record.correct_choice is None or not (
            0 <= record.correct_choice < len(record.choices)
        ):
            violations.append(V_MC_CHOICE_RANGE)
        elif not record.answers or record.answers[0] != record.choices[record.correct_choice]:
            violations.append(V_MC_ANSWER_MISMATCH)

    verdict = "invalid" if violations else "valid"
    return ValidationReport(record.id, verdict, tuple(violations))


# --- JSONL serialization -------------------------------------------------
#
# On-disk format: one JSON object per line, UTF-8, field names exactly as
# in QARecord. Key order is fixed so serialized corpora are byte-stable.


def record_to_dict(record: QARecord) -> dict:
    return {
        "id": record.id,
        "dataset": record.dataset,
        "split": record.split,
        "context": record.context,
        "question": record.question,
        "answers": list(record.answers),
        "answer_type": record.answer_type.value,
        "choices": list(record.choices) if record.choices is not None else None,
        "correct_choice": record.correct_choice,
        "boolean_value": record.boolean_value,
    }


def record_to_json(record: QARecord) -> str:
    return json.dumps(record_to_dict(record), ensure_ascii=False, separators=(",", ":"))


def record_from_dict(obj: dict) -> QARecord:
    missing = [k for k in ("id", "dataset", "split", "context", "question", "answers", "answer_type") if k not in obj]
    if missing:
        raise ValueError(f"record missing fields: {', '.join(missing)}")
    choices = obj.get("choices")
    return QARecord(
        id=str(obj["id"]),
        dataset=str(obj["dataset"]),
        split=str(obj["split"]),
        context=str(obj["context"]),
        question=str(obj["question"]),
        answers=tuple(str(a) for a in obj["answers"]),
        answer_type=AnswerType(obj["answer_type"]),
        choices=tuple(str(c) for c in choices) if choices is not None else None,
        correct_choice=obj.get("correct_choice"),
        boolean_value=obj.get("boolean_value"),
    )


def record_from_json(line: str) -> QARecord:
    return record_from_dict(json.loads(line))


def write_records(records: Iterable[QARecord], fp: TextIO) -> int:
    n = 0
    for record in records:
        fp.write(record_to_json(record))
        fp.write("\n")
        n += 1
    return n


def read_records(fp: TextIO) -> Iterator[QARecord]:
    for line in fp:
        line = line.strip()
        if line:
            yield record_from_json(line)
