"""Shim configuration, resolved from environment variables or flags."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_QG_MODEL = "QGF_SHIM_QG_MODEL"
ENV_SUM_MODEL = "QGF_SHIM_SUM_MODEL"
ENV_EMB_MODEL = "QGF_SHIM_EMB_MODEL"
ENV_DEVICE = "QGF_SHIM_DEVICE"
ENV_PORT = "QGF_SHIM_PORT"

DEFAULT_PORT = 8409


@dataclass(frozen=True)
class ShimConfig:
    """Checkpoint identifiers (hub ids or local paths) plus serving options.

    All three checkpoints are mandatory; the server must not come up
    unless every requested model actually loads.
    """

    qg_model: str
    summarization_model: str
    embedding_model: str
    device: str = "cpu"
    port: int = DEFAULT_PORT
    seed: int = 20240817  # fixed so beam decoding is reproducible

    @staticmethod
    def from_env(**overrides) -> "ShimConfig":
        values = {
            "qg_model": os.environ.get(ENV_QG_MODEL, ""),
            "summarization_model": os.environ.get(ENV_SUM_MODEL, ""),
            "embedding_model": os.environ.get(ENV_EMB_MODEL, ""),
            "device": os.environ.get(ENV_DEVICE, "cpu"),
            "port": int(os.environ.get(ENV_PORT, DEFAULT_PORT)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        missing = [k for k in ("qg_model", "summarization_model", "embedding_model") if not values[k]]
        if missing:
            raise ValueError(f"missing checkpoint configuration: {', '.join(missing)}")
        return ShimConfig(**values)
