"""Combine per-dataset encoded corpora into one training mixture.

Strategy is plain concatenation followed by a seeded deterministic
shuffle (see :mod:`qgforge.rng`): the per-dataset example counts add up
exactly to the mixture total, with no sampling temperature or
re-weighting. A training manifest capturing the intended fine-tuning
hyperparameters is emitted next to the corpus for an external trainer.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .rng import shuffle_in_place

_EXAMPLE_KEYS = {"record_id", "scheme", "input_text", "target_text"}


class MixError(RuntimeError):
    pass


@dataclass(frozen=True)
class MixInput:
    dataset: str
    split: str
    path: str


@dataclass
class MixPlan:
    inputs: list[MixInput]
    seed: int
    strategy: str = "concat_shuffle"
    expected_total: int | None = None

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("mix plan needs at least one input")
        if self.strategy != "concat_shuffle":
            raise ValueError(f"unknown mix strategy: {self.strategy!r}")


@dataclass
class MixSummary:
    seed: int
    per_input: dict[str, int]
    total: int
    output_sha256: str
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "per_input": self.per_input,
            "total": self.total,
            "output_sha256": self.output_sha256,
            "warnings": self.warnings,
        }


def _read_example_lines(inp: MixInput) -> list[str]:
    try:
        raw = Path(inp.path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MixError(f"cannot read mix input {inp.path}: {exc}") from exc
    lines = []
    for line_no, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MixError(f"{inp.path}:{line_no}: not valid JSON: {exc}") from exc
        if not isinstance(obj, dict) or not _EXAMPLE_KEYS.issubset(obj):
            raise MixError(f"{inp.path}:{line_no}: not an encoded example line")
        lines.append(line)
    return lines


def mix(plan: MixPlan, output_path: str | Path) -> MixSummary:
    """Concatenate the plan's inputs, shuffle with the plan's seed, write."""
    lines: list[str] = []
    per_input: dict[str, int] = {}
    for inp in plan.inputs:
        file_lines = _read_example_lines(inp)
        per_input[f"{inp.dataset}/{inp.split}"] = len(file_lines)
        lines.extend(file_lines)

    shuffle_in_place(lines, plan.seed)

    data = ("\n".join(lines) + "\n" if lines else "").encode("utf-8")
    Path(output_path).write_bytes(data)

    warnings = []
    if plan.expected_total is not None and plan.expected_total != len(lines):
        warnings.append(
            f"expected {plan.expected_total} examples but mixed {len(lines)}"
        )
    return MixSummary(
        seed=plan.seed,
        per_input=per_input,
        total=len(lines),
        output_sha256=hashlib.sha256(data).hexdigest(),
        warnings=warnings,
    )


@dataclass
class TrainingManifest:
    """Metadata handed to an external trainer; nothing here executes."""

    steps: int = 100_000
    learning_rate: float = 3e-5
    optimizer: str = "adamw"
    base_checkpoint: str = "t5-base"
    mixture_checksum: str = ""

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "learning_rate": self.learning_rate,
            "optimizer": self.optimizer,
            "base_checkpoint": self.base_checkpoint,
            "mixture_checksum": self.mixture_checksum,
        }


def emit_training_manifest(
    corpus_path: str | Path,
    manifest_path: str | Path,
    steps: int = 100_000,
    learning_rate: float = 3e-5,
    optimizer: str = "adamw",
    base_checkpoint: str = "t5-base",
) -> TrainingManifest:
    corpus_path = Path(corpus_path)
    if not corpus_path.exists():
        raise MixError(f"mixed corpus not found: {corpus_path}")
    checksum = hashlib.sha256(corpus_path.read_bytes()).hexdigest()
    manifest = TrainingManifest(
        steps=steps,
        learning_rate=learning_rate,
        optimizer=optimizer,
        base_checkpoint=base_checkpoint,
        mixture_checksum=checksum,
    )
    Path(manifest_path).write_text(
        json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    return manifest
