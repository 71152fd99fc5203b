"""Greedy-matching similarity over token embeddings.

Works on embedding matrices supplied by an embedding endpoint (or any
array-like source); this module only owns the matching math. Each token
is matched to the highest-cosine token on the other side, independently,
and matches are averaged (idf-weighted when weights are given). No
baseline rescaling.
"""

from __future__ import annotations

import numpy as np

from .pairs import PRF, f1_score


def _unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    # zero vectors stay zero rather than dividing by 0
    return matrix / np.where(norms == 0.0, 1.0, norms)


def _weighted_mean(values: np.ndarray, weights) -> float:
    if weights is None:
        return float(values.mean())
    w = np.asarray(weights, dtype=float)
    if w.shape != values.shape:
        raise ValueError("idf weight count does not match token count")
    total = w.sum()
    if total == 0.0:
        return 0.0
    return float((values * w).sum() / total)


def bertscore(
    hyp_embeddings,
    ref_embeddings,
    idf_hyp=None,
    idf_ref=None,
) -> PRF:
    """Greedy-match precision/recall/F1 between two embedding matrices.

    Rows are token vectors; both sides must share the embedding dimension.
    An empty side scores 0 everywhere.
    """
    hyp = np.atleast_2d(np.asarray(hyp_embeddings, dtype=float))
    ref = np.atleast_2d(np.asarray(ref_embeddings, dtype=float))
    if hyp.size == 0 or ref.size == 0:
        return PRF(0.0, 0.0, 0.0)
    if hyp.shape[1] != ref.shape[1]:
        raise ValueError(
            f"embedding dimension mismatch: hyp {hyp.shape[1]} vs ref {ref.shape[1]}"
        )
    sim = _unit_rows(hyp) @ _unit_rows(ref).T
    precision = _weighted_mean(sim.max(axis=1), idf_hyp)
    recall = _weighted_mean(sim.max(axis=0), idf_ref)
    return PRF(precision, recall, f1_score(precision, recall))
