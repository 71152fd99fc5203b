"""Shared containers for metric inputs and scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class EvalPair:
    """One generated question against its gold reference(s)."""

    id: str
    hypothesis: str
    references: tuple[str, ...]

    def __post_init__(self):
        if not self.references:
            raise ValueError(f"pair {self.id!r} has no references")


class PRF(NamedTuple):
    precision: float
    recall: float
    f1: float


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)
