"""Rule-based sentence splitting.

Shared by the question-generation pipeline (one QA pair per summary
sentence) and by summary-level ROUGE, so both see identical boundaries.
"""

from __future__ import annotations

from .records import normalize_text

DEFAULT_ABBREVIATIONS = (
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "No.",
    "vs.", "etc.", "e.g.", "i.e.", "cf.", "Fig.", "al.",
)


def split_sentences(text: str, abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS) -> list[str]:
    """Split normalized text into sentences.

    A boundary is a '.', '!' or '?' followed by whitespace and a capital
    letter, unless the token ending at the '.' is a guarded abbreviation.
    Joining the result with single spaces reproduces the normalized input.
    """
    t = normalize_text(text)
    if not t:
        return []
    guards = set(abbreviations)
    sentences = []
    start = 0
    for i, ch in enumerate(t):
        if ch not in ".!?" or i + 2 >= len(t):
            continue
        if t[i + 1] != " " or not t[i + 2].isupper():
            continue
        if ch == ".":
            tok_start = t.rfind(" ", 0, i) + 1
            if t[tok_start : i + 1] in guards:
                continue
        sentences.append(t[start : i + 1])
        start = i + 2
    if start < len(t):
        sentences.append(t[start:])
    return sentences
