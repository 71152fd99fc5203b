"""Text-to-text training pair construction.

Three input layouts are supported:

- ``prepend_answer`` (default): the answer segment, a single newline, then
  the context. For yes/no records the segment is the boolean word plus
  question entities joined with " + ".
- ``highlight``: the context with the first occurrence of the answer
  wrapped in bare ``<hl>`` sentinels.
- ``sep_token``: answer, a literal " [SEP] ", then the context.

The target is always the gold question, untouched. No type- or
dataset-specific prefix is ever added to the input.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, TextIO

from .records import AnswerType, QARecord


class EncodingScheme(str, Enum):
    PREPEND_ANSWER = "prepend_answer"
    HIGHLIGHT = "highlight"
    SEP_TOKEN = "sep_token"


SCHEME_ALIASES = {
    "prepend": EncodingScheme.PREPEND_ANSWER,
    "prepend_answer": EncodingScheme.PREPEND_ANSWER,
    "highlight": EncodingScheme.HIGHLIGHT,
    "sep": EncodingScheme.SEP_TOKEN,
    "sep_token": EncodingScheme.SEP_TOKEN,
}

HIGHLIGHT_SENTINEL = "<hl>"
SEP = "[SEP]"

# question text -> ordered entity list; entities must be substrings of the
# question, deduplicated preserving first occurrence
EntityExtractor = Callable[[str], list[str]]


class UnencodableError(ValueError):
    """Raised when a record cannot be represented under a scheme."""


@dataclass(frozen=True)
class EncodedExample:
    input_text: str
    target_text: str
    scheme: EncodingScheme
    record_id: str


_TOKEN_RE = re.compile(r"\S+")

# words that are only capitalized because they open the question
_FUNCTION_WORDS = frozenset(
    """a an the is are was were am be been do does did has have had can could
    will would shall should may might must in on at of to for from by with and
    or but if whether not it its his her their our your my this that these
    those there here who whom whose what which where when why how""".split()
)


def extract_entities_default(question: str) -> list[str]:
    """Heuristic entity extractor used when no NER service is plugged in.

    Picks maximal runs of capitalized tokens (skipping a question-opening
    function word such as "Is" or "Did") plus any digit-bearing token, in
    question order. Trailing punctuation and possessive 's are trimmed, so
    every entity is a verbatim substring of the question.
    """
    entities: list[str] = []
    run: list[tuple[int, int]] = []

    def flush():
        if run:
            entities.append(question[run[0][0] : run[-1][1]])
            run.clear()

    for idx, match in enumerate(_TOKEN_RE.finditer(question)):
        start, end = match.span()
        while start < end and not question[start].isalnum():
            start += 1
        while end > start and not question[end - 1].isalnum():
            end -= 1
        core = question[start:end]
        if core.endswith(("'s", "’s")):
            end -= 2
            core = question[start:end]
        first_alpha = next((c for c in core if c.isalpha()), None)
        capitalized = first_alpha is not None and first_alpha.isupper()
        if capitalized and not (idx == 0 and core.lower() in _FUNCTION_WORDS):
            run.append((start, end))
            continue
        flush()
        if any(c.isdigit() for c in core):
            entities.append(core)
    flush()

    seen = set()
    unique = []
    for e in entities:
        if e not in seen:
            seen.add(e)
            unique.append(e)
    return unique


def encode_answer_context(answer: str, context: str, scheme: EncodingScheme) -> str:
    """Build model input from a plain (answer, context) pair."""
    if not answer:
        raise UnencodableError("empty answer")
    if scheme is EncodingScheme.PREPEND_ANSWER:
        return f"{answer}\n{context}"
    if scheme is EncodingScheme.SEP_TOKEN:
        return f"{answer} {SEP} {context}"
    if scheme is EncodingScheme.HIGHLIGHT:
        if HIGHLIGHT_SENTINEL in context or HIGHLIGHT_SENTINEL in answer:
            raise UnencodableError("text already contains the highlight sentinel")
        i = context.find(answer)
        if i < 0:
            raise UnencodableError("answer is not a substring of the context")
        j = i + len(answer)
        return (
            context[:i]
            + HIGHLIGHT_SENTINEL
            + answer
            + HIGHLIGHT_SENTINEL
            + context[j:]
        )
    raise ValueError(f"unknown scheme: {scheme}")


def _answer_segment(record: QARecord, extractor: EntityExtractor | None) -> str:
    if record.answer_type is AnswerType.YES_NO:
        extract = extractor or extract_entities_default
        entities = extract(record.question)
        segment = record.answers[0] if record.answers else ""
        for entity in entities:
            segment += f" + {entity}"
        return segment
    if record.answer_type is AnswerType.MULTIPLE_CHOICE:
        if record.choices is None or record.correct_choice is None:
            raise UnencodableError("multiple-choice record without resolved choice")
        return record.choices[record.correct_choice]
    return record.answers[0] if record.answers else ""


def encode(
    record: QARecord,
    scheme: EncodingScheme = EncodingScheme.PREPEND_ANSWER,
    extractor: EntityExtractor | None = None,
) -> EncodedExample:
    """Encode one record into an (input_text, target_text) pair.

    The entity extractor only matters for yes/no records under
    ``prepend_answer``; the built-in heuristic is used when none is given.
    """
    if scheme is EncodingScheme.PREPEND_ANSWER:
        answer = _answer_segment(record, extractor)
    else:
        answer = record.answers[0] if record.answers else ""
    input_text = encode_answer_context(answer, record.context, scheme)
    return EncodedExample(
        input_text=input_text,
        target_text=record.question,
        scheme=scheme,
        record_id=record.id,
    )


def encode_corpus(
    records: Iterable[QARecord],
    scheme: EncodingScheme = EncodingScheme.PREPEND_ANSWER,
    extractor: EntityExtractor | None = None,
) -> tuple[list[EncodedExample], dict[str, int]]:
    """Encode a record stream, skipping unencodable records.

    Returns the examples in input order plus counters:
    {"encoded": n, "skipped": k}.
    """
    examples = []
    skipped = 0
    for record in records:
        try:
            examples.append(encode(record, scheme, extractor))
        except UnencodableError:
            skipped += 1
    return examples, {"encoded": len(examples), "skipped": skipped}


# --- JSONL serialization -------------------------------------------------


def example_to_json(example: EncodedExample) -> str:
    return json.dumps(
        {
            "record_id": example.record_id,
            "scheme": example.scheme.value,
            "input_text": example.input_text,
            "target_text": example.target_text,
        },
        ensure_ascii=False,
        separators=(",", ":"),
    )


def example_from_json(line: str) -> EncodedExample:
    obj = json.loads(line)
    return EncodedExample(
        input_text=obj["input_text"],
        target_text=obj["target_text"],
        scheme=EncodingScheme(obj["scheme"]),
        record_id=str(obj["record_id"]),
    )


def write_examples(examples: Iterable[EncodedExample], fp: TextIO) -> int:
    n = 0
    for example in examples:
        fp.write(example_to_json(example))
        fp.write("\n")
        n += 1
    return n


def read_examples(fp: TextIO) -> Iterator[EncodedExample]:
    for line in fp:
        line = line.strip()
        if line:
            yield example_from_json(line)
