"""Corpus-level BLEU with modified (clipped) n-gram precision.

Pinned variant: max_n = 4, precisions pooled over the whole corpus,
geometric mean, brevity penalty against the closest reference length per
pair. Unsmoothed by default; any zero pooled precision gives a score of
0. Optional smoothing substitutes `eps` for zero match counts.
"""

from __future__ import annotations

import logging
import math
from collections import Counter

from .pairs import EvalPair
from .tokenizer import ngram_counts, tokenize

log = logging.getLogger(__name__)


def closest_ref_length(ref_lengths: list[int], hyp_length: int) -> int:
    """Reference length closest to the hypothesis; ties go to the shorter."""
    return min(ref_lengths, key=lambda r: (abs(r - hyp_length), r))


def corpus_bleu(
    pairs: list[EvalPair],
    max_n: int = 4,
    smooth: bool = False,
    eps: float = 1e-9,
    mode: str = "default",
) -> float:
    if not pairs:
        raise ValueError("corpus_bleu needs at least one pair")

    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = 0
    ref_len = 0
    for pair in pairs:
        hyp = tokenize(pair.hypothesis, mode)
        refs = [tokenize(r, mode) for r in pair.references]
        hyp_len += len(hyp)
        ref_len += closest_ref_length([len(r) for r in refs], len(hyp))
        for n in range(1, max_n + 1):
            hyp_counts = ngram_counts(hyp, n)
            totals[n - 1] += sum(hyp_counts.values())
            if not hyp_counts:
                continue
            max_ref: Counter = Counter()
            for ref in refs:
                for gram, count in ngram_counts(ref, n).items():
                    if count > max_ref[gram]:
                        max_ref[gram] = count
            matches[n - 1] += sum(min(c, max_ref[g]) for g, c in hyp_counts.items())

    if hyp_len == 0:
        log.warning("empty hypothesis corpus, BLEU = 0")
        return 0.0

    log_sum = 0.0
    for m, t in zip(matches, totals):
        if t == 0:
            return 0.0
        if m == 0:
            if not smooth:
                return 0.0
            m = eps
        log_sum += math.log(m / t)
    geo_mean = math.exp(log_sum / max_n)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * geo_mean


def sentence_bleu(pair: EvalPair, max_n: int = 4, smooth: bool = False, mode: str = "default") -> float:
    """Single-pair BLEU, used for per-pair report detail."""
    return corpus_bleu([pair], max_n=max_n, smooth=smooth, mode=mode)
