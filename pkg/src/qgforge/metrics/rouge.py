"""ROUGE-N, ROUGE-L and summary-level ROUGE-L (union-LCS).

Multi-reference handling is the same everywhere: the pair's score is the
best F1 over its references (first reference wins ties). All scores are
raw values in [0, 1].
"""

from __future__ import annotations

from .pairs import PRF, EvalPair, f1_score
from .tokenizer import ngram_counts, tokenize
from ..records import normalize_text
from ..sentences import split_sentences


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _best(scores: list[PRF]) -> PRF:
    best = scores[0]
    for s in scores[1:]:
        if s.f1 > best.f1:
            best = s
    return best


def rouge_n(pair: EvalPair, n: int, mode: str = "default") -> PRF:
    """N-gram multiset overlap; F1 = 2PR/(P+R), 0 when there is no overlap."""
    if n < 1:
        raise ValueError("n must be >= 1")
    hyp = ngram_counts(tokenize(pair.hypothesis, mode), n)
    hyp_total = sum(hyp.values())
    scores = []
    for ref_text in pair.references:
        ref = ngram_counts(tokenize(ref_text, mode), n)
        overlap = sum(min(c, ref[g]) for g, c in hyp.items())
        p = _ratio(overlap, hyp_total)
        r = _ratio(overlap, sum(ref.values()))
        scores.append(PRF(p, r, f1_score(p, r)))
    return _best(scores)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(|a|*|b|) dynamic program."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, start=1):
            if x == y:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_l(pair: EvalPair, mode: str = "default") -> PRF:
    """LCS-based: P = LCS/|hyp|, R = LCS/|ref|."""
    hyp = tokenize(pair.hypothesis, mode)
    scores = []
    for ref_text in pair.references:
        ref = tokenize(ref_text, mode)
        lcs = lcs_length(hyp, ref)
        p = _ratio(lcs, len(hyp))
        r = _ratio(lcs, len(ref))
        scores.append(PRF(p, r, f1_score(p, r)))
    return _best(scores)


def _lcs_ref_positions(ref: list[str], hyp: list[str]) -> set[int]:
    """Positions in ``ref`` matched by one canonical LCS against ``hyp``.

    Backtrace tie-break is pinned: take the diagonal whenever tokens are
    equal, otherwise prefer moving up the reference axis.
    """
    n, m = len(ref), len(hyp)
    if n == 0 or m == 0:
        return set()
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row, above = dp[i], dp[i - 1]
        ri = ref[i - 1]
        for j in range(1, m + 1):
            if ri == hyp[j - 1]:
                row[j] = above[j - 1] + 1
            else:
                row[j] = max(above[j], row[j - 1])
    positions = set()
    i, j = n, m
    while i > 0 and j > 0:
        if ref[i - 1] == hyp[j - 1]:
            positions.add(i - 1)
            i -= 1
            j -= 1
        elif dp[i - 1][j] >= dp[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return positions


def _split_for_lsum(text: str) -> list[str]:
    # explicit newlines win; otherwise fall back to the shared splitter
    if "\n" in text:
        return [normalize_text(line) for line in text.split("\n") if line.strip()]
    return split_sentences(text)


def rouge_lsum(pair: EvalPair, mode: str = "default") -> PRF:
    """Summary-level ROUGE-L.

    Each reference sentence contributes the size of the union of its LCS
    matches across all hypothesis sentences; recall and precision divide
    the summed hits by total reference / hypothesis token counts.
    """
    hyp_sents = [tokenize(s, mode) for s in _split_for_lsum(pair.hypothesis)]
    hyp_total = sum(len(s) for s in hyp_sents)
    scores = []
    for ref_text in pair.references:
        ref_sents = [tokenize(s, mode) for s in _split_for_lsum(ref_text)]
        ref_total = sum(len(s) for s in ref_sents)
        hits = 0
        for ref_sent in ref_sents:
            union: set[int] = set()
            for hyp_sent in hyp_sents:
                union |= _lcs_ref_positions(ref_sent, hyp_sent)
            hits += len(union)
        p = _ratio(hits, hyp_total)
        r = _ratio(hits, ref_total)
        scores.append(PRF(p, r, f1_score(p, r)))
    return _best(scores)
