#!/usr/bin/env python3
"""Regenerate the committed test fixtures under tests/data/.

Golden encoding files are written from literal template strings on
purpose -- they must stay independent of the encoder implementation they
verify. Run from the repository root:

    python scripts/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
GOLDEN = DATA / "golden"

BOYLE_SENTENCE = (
    "In the late 17th century, Robert Boyle proved that air is necessary for combustion."
)
EXPERIMENT_SENTENCE = (
    "In one experiment he found that placing either a mouse or a lit candle in a "
    "closed container over water caused the water to rise."
)
STORY_SENTENCE = (
    "The scientist placed a small animal in a closed container over water and "
    "watched the level rise."
)
RAIN_SENTENCE = "it rains rarely in the region and stays dry for months."
PARIS_SENTENCE = "Paris is the capital city of France and its largest city."

SAMPLE_DOCUMENT = (
    "In the late 17th century, Robert Boyle proved that air is necessary for "
    "combustion. English chemist John Mayow (1641-1679) refined this work by "
    "showing that fire requires only a part of air that he called spiritus "
    "nitroaereus or just nitroaereus. In one experiment he found that placing "
    "either a mouse or a lit candle in a closed container over water caused the "
    "water to rise and replace one-fourteenth of the air's volume before "
    "extinguishing the subjects. From this he surmised that nitroaereus is "
    "consumed in both respiration and combustion."
)

GOLDEN_FILES = {
    "ex_prepend.txt": f"Robert Boyle\n{BOYLE_SENTENCE}",
    "ab_prepend.txt": f"through an experiment\n{EXPERIMENT_SENTENCE}",
    "mc_prepend.txt": f"a mouse\n{STORY_SENTENCE}",
    "yn0_prepend.txt": f"no\n{RAIN_SENTENCE}",
    "yn1_prepend.txt": f"yes + Paris\n{PARIS_SENTENCE}",
    "yn2_prepend.txt": f"yes + Paris + France\n{PARIS_SENTENCE}",
    "ex_highlight.txt": (
        "In the late 17th century, <hl>Robert Boyle<hl> proved that air is "
        "necessary for combustion."
    ),
    "ex_sep.txt": f"Robert Boyle [SEP] {BOYLE_SENTENCE}",
}

# the records the golden files encode, in unified JSONL form
GOLDEN_RECORDS = [
    {
        "id": "ex-1", "dataset": "demo", "split": "train",
        "context": BOYLE_SENTENCE,
        "question": "Who proved that air is necessary for combustion?",
        "answers": ["Robert Boyle"], "answer_type": "extractive",
        "choices": None, "correct_choice": None, "boolean_value": None,
    },
    {
        "id": "ab-1", "dataset": "demo", "split": "train",
        "context": EXPERIMENT_SENTENCE,
        "question": "How did he find that the gas is consumed?",
        "answers": ["through an experiment"], "answer_type": "abstractive",
        "choices": None, "correct_choice": None, "boolean_value": None,
    },
    {
        "id": "mc-1", "dataset": "demo", "split": "train",
        "context": STORY_SENTENCE,
        "question": "What did the scientist place in the container?",
        "answers": ["a mouse"], "answer_type": "multiple_choice",
        "choices": ["a candle", "a mouse", "a plant"], "correct_choice": 1,
        "boolean_value": None,
    },
    {
        "id": "yn-0", "dataset": "demo", "split": "train",
        "context": RAIN_SENTENCE,
        "question": "does it rain there often",
        "answers": ["no"], "answer_type": "yes_no",
        "choices": None, "correct_choice": None, "boolean_value": "no",
    },
    {
        "id": "yn-1", "dataset": "demo", "split": "train",
        "context": PARIS_SENTENCE,
        "question": "Is Paris big?",
        "answers": ["yes"], "answer_type": "yes_no",
        "choices": None, "correct_choice": None, "boolean_value": "yes",
    },
    {
        "id": "yn-2", "dataset": "demo", "split": "train",
        "context": PARIS_SENTENCE,
        "question": "Is Paris the capital of France?",
        "answers": ["yes"], "answer_type": "yes_no",
        "choices": None, "correct_choice": None, "boolean_value": "yes",
    },
]

SPAN_FIXTURE = [
    {"header": {"dataset": "demo", "split": "train"}},
    {
        "context": BOYLE_SENTENCE + " " + EXPERIMENT_SENTENCE,
        "qas": [
            {
                "qid": "q1",
                "question": "Who proved that air is necessary for combustion?",
                "answers": ["Robert Boyle"],
            },
            {
                "qid": "q2",
                "question": "What did he place in a closed container?",
                "detected_answers": [{"text": "a mouse"}, {"text": "a lit candle"}],
            },
        ],
    },
]

MC_FIXTURE = [
    {
        "id": "m1",
        "story": STORY_SENTENCE,
        "question": "What did the scientist place in the container?",
        "options": ["a candle", "a mouse", "a plant"],
        "answer": 1,
    },
    {
        "id": "m2",
        "story": STORY_SENTENCE,
        "question": "Where was the container placed?",
        "options": ["over water", "on a shelf"],
        "answer": "A",
    },
    {
        "id": "m3-no-marker",
        "story": STORY_SENTENCE,
        "question": "Which of these is missing a marker?",
        "options": ["red", "blue"],
    },
]

BOOLEAN_FIXTURE = [
    {"id": "b1", "question": "does fire need air to burn", "passage": BOYLE_SENTENCE, "answer": True},
    {"id": "b2", "question": "does it rain there often", "passage": RAIN_SENTENCE, "answer": False},
    {"id": "b3-no-label", "question": "is this labeled", "passage": RAIN_SENTENCE},
]

# 2 cloze + 1 unanswerable + 1 non-self-contained MC + 6 valid
FILTER_FIXTURE = [
    {
        "id": "cloze-1", "dataset": "demo", "split": "train",
        "context": "The capital of France is Paris, a large city.",
        "question": "The capital of @placeholder is large.",
        "answers": ["Paris"], "answer_type": "extractive",
        "choices": None, "correct_choice": None, "boolean_value": None,
    },
    {
        "id": "cloze-2", "dataset": "demo", "split": "train",
        "context": "Oxygen supports combustion in most settings.",
        "question": "Fire needs _____ to burn.",
        "answers": ["Oxygen"], "answer_type": "extractive",
        "choices": None, "correct_choice": None, "boolean_value": None,
    },
    {
        "id": "unanswerable-1", "dataset": "demo", "split": "train",
        "context": BOYLE_SENTENCE,
        "question": "What color was the laboratory?",
        "answers": [], "answer_type": "extractive",
        "choices": None, "correct_choice": None, "boolean_value": None,
    },
    {
        "id": "mc-not-self-contained", "dataset": "demo", "split": "train",
        "context": STORY_SENTENCE,
        "question": "Which of the following did the scientist use?",
        "answers": ["a mouse"], "answer_type": "multiple_choice",
        "choices": ["a candle", "a mouse"], "correct_choice": 1,
        "boolean_value": None,
    },
] + GOLDEN_RECORDS

EVAL_PREDICTIONS = [
    {"id": "e1", "hypothesis": "who proved that air is necessary for combustion?"},
    {"id": "e2", "hypothesis": "what did the scientist place in the container?"},
    {"id": "e3", "hypothesis": "does fire need air?"},
    {"id": "e4", "hypothesis": "is paris the capital of france?"},
    {"id": "e5", "hypothesis": "how did he find the gas was consumed?"},
    {"id": "e6", "hypothesis": "what replaced part of the air volume?"},
    {"id": "e7", "hypothesis": "when did boyle prove his claim?"},
    {"id": "e8", "hypothesis": "what rises in the closed container?"},
    {"id": "e9", "hypothesis": "what is consumed in respiration?"},
    {"id": "e10", "hypothesis": "who refined the work on air?"},
]

EVAL_REFERENCES = [
    {"id": "e1", "references": ["Who proved that air is necessary for combustion?"]},
    {"id": "e2", "references": ["What did the scientist place in the container?"]},
    {"id": "e3", "references": ["Does fire need air to burn?", "Does fire require air?"]},
    {"id": "e4", "references": ["Is Paris the capital of France?"]},
    {"id": "e5", "references": ["How did he find that the gas is consumed?"]},
    {"id": "e6", "references": ["What replaced one-fourteenth of the air's volume?"]},
    {"id": "e7", "references": ["When did Robert Boyle prove that air is necessary?"]},
    {"id": "e8", "references": ["What rose in the closed container?"]},
    {"id": "e9", "references": ["What is consumed in both respiration and combustion?"]},
    {"id": "e10", "references": ["Who refined the work on combustion?"]},
]


def write_jsonl(path: Path, rows: list[dict]) -> None:
    path.write_text(
        "\n".join(json.dumps(r, ensure_ascii=False, separators=(",", ":")) for r in rows) + "\n",
        encoding="utf-8",
    )


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, content in GOLDEN_FILES.items():
        (GOLDEN / name).write_bytes(content.encode("utf-8"))
    write_jsonl(DATA / "golden_records.jsonl", GOLDEN_RECORDS)
    write_jsonl(DATA / "span_fixture.jsonl", SPAN_FIXTURE)
    (DATA / "mc_fixture.json").write_text(
        json.dumps(MC_FIXTURE, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    write_jsonl(DATA / "boolean_fixture.jsonl", BOOLEAN_FIXTURE)
    write_jsonl(DATA / "filter_fixture.jsonl", FILTER_FIXTURE)
    write_jsonl(DATA / "predictions.jsonl", EVAL_PREDICTIONS)
    write_jsonl(DATA / "references.jsonl", EVAL_REFERENCES)
    (DATA / "sample_document.txt").write_text(SAMPLE_DOCUMENT + "\n", encoding="utf-8")
    print(f"fixtures written under {DATA}")


if __name__ == "__main__":
    main()
