"""CLI entry point: load checkpoints and serve the wire protocol."""

from __future__ import annotations

import argparse

import uvicorn

from .app import create_app
from .config import DEFAULT_PORT, ShimConfig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qgforge-shim",
        description="Serve /generate and /embed over seq2seq and embedding checkpoints. "
        "Flags fall back to QGF_SHIM_* environment variables.",
    )
    parser.add_argument("--qg-model", help="checkpoint id/path for question generation")
    parser.add_argument("--sum-model", help="checkpoint id/path for summarization")
    parser.add_argument("--emb-model", help="checkpoint id/path for token embeddings")
    parser.add_argument("--device", default=None)
    parser.add_argument("--port", type=int, default=None)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args(argv)

    config = ShimConfig.from_env(
        qg_model=args.qg_model,
        summarization_model=args.sum_model,
        embedding_model=args.emb_model,
        device=args.device,
        port=args.port if args.port is not None else DEFAULT_PORT,
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
