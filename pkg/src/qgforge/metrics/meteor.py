"""METEOR with exact and stem matching stages.

Original constants: F_mean = 10PR/(R+9P), penalty = 0.5*(chunks/m)^3,
score = F_mean*(1-penalty). No synonym or paraphrase tables. The
alignment policy is pinned so scores are reproducible: within each stage
(exact first, then Porter stems on the leftovers), hypothesis unigrams
are scanned left to right and each one is matched to the earliest still
unmatched reference unigram with the same key.
"""

from __future__ import annotations

from .pairs import EvalPair
from .stemmer import stem
from .tokenizer import tokenize


def _stage_align(
    hyp_keys: list[str],
    ref_keys: list[str],
    hyp_free: list[bool],
    ref_free: list[bool],
    matches: list[tuple[int, int]],
) -> None:
    for i, h in enumerate(hyp_keys):
        if not hyp_free[i]:
            continue
        for j, r in enumerate(ref_keys):
            if ref_free[j] and h == r:
                matches.append((i, j))
                hyp_free[i] = False
                ref_free[j] = False
                break


def align(hyp: list[str], ref: list[str]) -> list[tuple[int, int]]:
    """Two-stage unigram alignment; returns (hyp_idx, ref_idx) pairs."""
    hyp_free = [True] * len(hyp)
    ref_free = [True] * len(ref)
    matches: list[tuple[int, int]] = []
    _stage_align(hyp, ref, hyp_free, ref_free, matches)
    _stage_align([stem(t) for t in hyp], [stem(t) for t in ref], hyp_free, ref_free, matches)
    matches.sort()
    return matches


def _chunk_count(matches: list[tuple[int, int]]) -> int:
    chunks = 0
    prev = None
    for h, r in matches:
        if prev is None or h != prev[0] + 1 or r != prev[1] + 1:
            chunks += 1
        prev = (h, r)
    return chunks


def _score_one(hyp: list[str], ref: list[str]) -> float:
    matches = align(hyp, ref)
    m = len(matches)
    if m == 0:
        return 0.0
    precision = m / len(hyp)
    recall = m / len(ref)
    f_mean = 10 * precision * recall / (recall + 9 * precision)
    penalty = 0.5 * (_chunk_count(matches) / m) ** 3
    return f_mean * (1.0 - penalty)


def meteor(pair: EvalPair, mode: str = "default") -> float:
    """METEOR score in [0, 1]; best score over references."""
    hyp = tokenize(pair.hypothesis, mode)
    if not hyp:
        return 0.0
    return max(_score_one(hyp, tokenize(r, mode)) for r in pair.references)
