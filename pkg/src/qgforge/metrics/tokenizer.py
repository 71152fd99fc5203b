"""Pinned tokenizer used by every n-gram metric.

Cross-run (and cross-implementation) score parity requires a bit-exact
tokenizer, so the rules are deliberately tiny: lowercase, split on
whitespace, and give every punctuation character its own token.
"""

from __future__ import annotations

from collections import Counter

MODES = ("default", "as_is")


def tokenize(text: str, mode: str = "default") -> list[str]:
    """Tokenize ``text``.

    ``default``: lowercase; alphanumeric runs become tokens and every
    other non-space character becomes a single-character token.
    ``as_is``: plain whitespace split, no case folding.
    """
    if mode == "as_is":
        return text.split()
    if mode != "default":
        raise ValueError(f"unknown tokenizer mode: {mode!r}")
    tokens: list[str] = []
    buf: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            buf.append(ch)
            continue
        if buf:
            tokens.append("".join(buf))
            buf.clear()
        if not ch.isspace():
            tokens.append(ch)
    if buf:
        tokens.append("".join(buf))
    return tokens


def ngram_counts(tokens: list[str], n: int) -> Counter:
    """Multiset of n-grams as a Counter keyed by token tuples."""
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
