"""Corpus evaluation: runs the requested metric columns and shapes a report.

Report layout mirrors the usual QG results table: seven columns (BLEU,
R1, R2, RL, RLsum, METEOR, BERTScore). Aggregates are arithmetic means of
per-pair scores except BLEU, which is pooled at corpus level. Raw scores
live in [0, 1]; the table view scales everything except BERTScore by 100.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .bertscore import bertscore
from .bleu import corpus_bleu, sentence_bleu
from .meteor import meteor
from .pairs import EvalPair
from .rouge import rouge_l, rouge_lsum, rouge_n

log = logging.getLogger(__name__)

COLUMNS = ("bleu", "r1", "r2", "rl", "rlsum", "meteor", "bertscore")
TABLE_NAMES = {
    "bleu": "BLEU",
    "r1": "R1",
    "r2": "R2",
    "rl": "RL",
    "rlsum": "RLsum",
    "meteor": "METEOR",
    "bertscore": "BERTScore",
}


@dataclass
class MetricConfig:
    columns: tuple[str, ...] = COLUMNS
    tokenizer_mode: str = "default"
    bleu_max_n: int = 4
    bleu_smooth: bool = False
    embedder: object | None = None  # needs .embed(texts) -> list of (tokens, vectors)

    def __post_init__(self):
        unknown = [c for c in self.columns if c not in COLUMNS]
        if unknown:
            raise ValueError(f"unknown metric columns: {unknown}")


@dataclass
class MetricReport:
    columns: tuple[str, ...]
    aggregates: dict
    pair_scores: list[dict]
    unavailable: dict = field(default_factory=dict)  # column -> reason

    def table_row(self) -> dict:
        row = {}
        for col in self.columns:
            value = self.aggregates.get(col)
            if value is None:
                row[TABLE_NAMES[col]] = None
            elif col == "bertscore":
                row[TABLE_NAMES[col]] = value
            else:
                row[TABLE_NAMES[col]] = value * 100.0
        return row

    def to_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "aggregates": self.aggregates,
            "table_row": self.table_row(),
            "unavailable": self.unavailable,
            "pairs": self.pair_scores,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    def to_csv(self) -> str:
        """Single CSV row in table column order; unavailable cells left empty."""
        header = ",".join(TABLE_NAMES[c] for c in self.columns)
        cells = []
        for col, value in self.table_row().items():
            if value is None:
                cells.append("")
            elif col == "BERTScore":
                cells.append(f"{value:.4f}")
            else:
                cells.append(f"{value:.2f}")
        return header + "\n" + ",".join(cells) + "\n"


def _embed_all(pairs: list[EvalPair], embedder) -> tuple[list, list[list]]:
    hyp_texts = [p.hypothesis for p in pairs]
    ref_texts = [r for p in pairs for r in p.references]
    embedded = embedder.embed(hyp_texts + ref_texts)
    hyp_embs = embedded[: len(hyp_texts)]
    ref_embs: list[list] = []
    k = len(hyp_texts)
    for p in pairs:
        ref_embs.append(embedded[k : k + len(p.references)])
        k += len(p.references)
    return hyp_embs, ref_embs


def _bertscore_column(pairs: list[EvalPair], embedder) -> list[float]:
    hyp_embs, ref_embs = _embed_all(pairs, embedder)
    scores = []
    for hyp, refs in zip(hyp_embs, ref_embs):
        best = max(bertscore(hyp.vectors, ref.vectors).f1 for ref in refs)
        scores.append(best)
    return scores


def evaluate_corpus(pairs: list[EvalPair], config: MetricConfig | None = None) -> MetricReport:
    """Score every pair on the requested columns and aggregate.

    An unreachable embedding service downgrades BERTScore to an
    "unavailable" marker instead of failing the run.
    """
    if not pairs:
        raise ValueError("evaluate_corpus needs at least one pair")
    config = config or MetricConfig()
    mode = config.tokenizer_mode

    per_pair: dict[str, list[float]] = {}
    unavailable: dict[str, str] = {}
    for col in config.columns:
        if col == "bleu":
            per_pair[col] = [
                sentence_bleu(p, config.bleu_max_n, config.bleu_smooth, mode) for p in pairs
            ]
        elif col == "r1":
            per_pair[col] = [rouge_n(p, 1, mode).f1 for p in pairs]
        elif col == "r2":
            per_pair[col] = [rouge_n(p, 2, mode).f1 for p in pairs]
        elif col == "rl":
            per_pair[col] = [rouge_l(p, mode).f1 for p in pairs]
        elif col == "rlsum":
            per_pair[col] = [rouge_lsum(p, mode).f1 for p in pairs]
        elif col == "meteor":
            per_pair[col] = [meteor(p, mode) for p in pairs]
        elif col == "bertscore":
            if config.embedder is None:
                unavailable[col] = "no embedding endpoint configured"
                continue
            try:
                per_pair[col] = _bertscore_column(pairs, config.embedder)
            except RuntimeError as exc:
                log.warning("BERTScore unavailable: %s", exc)
                unavailable[col] = str(exc)

    aggregates: dict[str, float | None] = {}
    for col in config.columns:
        if col in unavailable:
            aggregates[col] = None
        elif col == "bleu":
            aggregates[col] = corpus_bleu(pairs, config.bleu_max_n, config.bleu_smooth, mode)
        else:
            scores = per_pair[col]
            aggregates[col] = sum(scores) / len(scores)

    pair_scores = []
    for i, pair in enumerate(pairs):
        row: dict = {"id": pair.id}
        for col in config.columns:
            row[col] = per_pair[col][i] if col in per_pair else None
        pair_scores.append(row)

    return MetricReport(
        columns=config.columns,
        aggregates=aggregates,
        pair_scores=pair_scores,
        unavailable=unavailable,
    )


def load_eval_pairs(predictions_path: str, references_path: str) -> list[EvalPair]:
    """Join a predictions JSONL {id, hypothesis} with references JSONL
    {id, references}. Every prediction must have references; order follows
    the predictions file."""
    refs: dict[str, tuple[str, ...]] = {}
    with open(references_path, encoding="utf-8") as fp:
        for line in fp:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            refs[str(obj["id"])] = tuple(str(r) for r in obj["references"])
    pairs = []
    missing = []
    with open(predictions_path, encoding="utf-8") as fp:
        for line in fp:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            pid = str(obj["id"])
            if pid not in refs:
                missing.append(pid)
                continue
            pairs.append(EvalPair(pid, str(obj["hypothesis"]), refs[pid]))
    if missing:
        raise ValueError(f"predictions without references: {', '.join(missing[:5])}")
    return pairs
