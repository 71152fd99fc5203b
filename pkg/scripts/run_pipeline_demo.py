#!/usr/bin/env python3
"""Run the summarize-then-generate pipeline against live endpoints and
print the resulting QA pairs.

Endpoints come from flags or the QGF_SUM_URL / QGF_GEN_URL environment
variables; the shim under shim/ serves both, e.g.:

    qgforge-shim --qg-model <ckpt> --sum-model <ckpt> --emb-model <ckpt> &
    python scripts/run_pipeline_demo.py \
        --gen-url http://127.0.0.1:8409/qg \
        --sum-url http://127.0.0.1:8409/summarize
"""

import argparse
import os
import sys
from pathlib import Path

from qgforge.clients import GenerationClient
from qgforge.pipeline import summarize_then_qg

DEFAULT_DOCUMENT = Path(__file__).resolve().parent.parent / "tests" / "data" / "sample_document.txt"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--document", default=str(DEFAULT_DOCUMENT))
    parser.add_argument("--gen-url", default=os.environ.get("QGF_GEN_URL"))
    parser.add_argument("--sum-url", default=os.environ.get("QGF_SUM_URL"))
    parser.add_argument("--beam", type=int, default=4)
    parser.add_argument("--window-chars", type=int, default=None)
    args = parser.parse_args()
    if not args.gen_url or not args.sum_url:
        parser.error("need --gen-url and --sum-url (or QGF_GEN_URL / QGF_SUM_URL)")

    document = Path(args.document).read_text(encoding="utf-8").strip()
    with GenerationClient(args.sum_url) as summarizer, GenerationClient(args.gen_url) as qg:
        result = summarize_then_qg(
            document, summarizer, qg, beam=args.beam, window_chars=args.window_chars
        )

    print(f"summary: {result.summary}\n")
    for i, pair in enumerate(result.pairs, start=1):
        print(f"[{i}] answer:   {pair.answer}")
        print(f"    question: {pair.question}")
    for error in result.errors:
        print(f"[!] sentence {error.sentence_index}: {error.message}", file=sys.stderr)
    return 0 if not result.errors else 2


if __name__ == "__main__":
    raise SystemExit(main())
