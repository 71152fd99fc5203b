"""Command-line entry point: ingest -> stats -> encode -> mix -> eval ->
generate -> pipeline.

Settings resolve with precedence CLI flag > environment variable > config
file > built-in default. The config file is TOML; recognized keys:

    [endpoints]
    gen_url = "http://localhost:8409/qg"
    sum_url = "http://localhost:8409/summarize"
    emb_url = "http://localhost:8409"

    [defaults]
    scheme = "prepend"

Every artifact-producing run writes a ``<output>.config.json`` snapshot of
its resolved settings next to its primary output, so any artifact can be
reproduced from the snapshot alone.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .clients import (
    DEFAULT_BEAM,
    DEFAULT_MAX_OUTPUT_TOKENS,
    ENV_EMB_URL,
    ENV_GEN_URL,
    EmbeddingClient,
    GenerationClient,
)
from .encoding import SCHEME_ALIASES, encode_corpus, write_examples
from .ingestion import (
    CorpusManifest,
    FilterRule,
    default_filter_rules,
    ingest_dataset,
)
from .metrics import MetricConfig, evaluate_corpus, load_eval_pairs
from .metrics.report import COLUMNS
from .mixing import MixInput, MixPlan, emit_training_manifest, mix
from .pipeline import generate_question, summarize_then_qg, write_pairs
from .records import AnswerType, read_records, write_records
from .sentences import split_sentences

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

ENV_SUM_URL = "QGF_SUM_URL"


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract here is exit 1
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    p = Path(path)
    if not p.exists():
        raise UsageError(f"config file not found: {path}")
    with open(p, "rb") as fp:
        return tomllib.load(fp)


def _resolve(cli_value, env_name: str | None, config: dict, section: str, key: str, default=None):
    if cli_value is not None:
        return cli_value
    if env_name and os.environ.get(env_name):
        return os.environ[env_name]
    value = config.get(section, {}).get(key)
    if value is not None:
        return value
    return default


def _require_file(path: str, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{what} not found: {path}")
    return p


def _write_snapshot(output: str | Path, subcommand: str, settings: dict) -> None:
    snapshot = {"tool": f"qgforge {__version__}", "subcommand": subcommand, "settings": settings}
    Path(f"{output}.config.json").write_text(
        json.dumps(snapshot, indent=2, ensure_ascii=False, default=str) + "\n",
        encoding="utf-8",
    )


def _scheme(name: str):
    if name not in SCHEME_ALIASES:
        raise UsageError(f"unknown scheme: {name!r} (expected one of {sorted(SCHEME_ALIASES)})")
    return SCHEME_ALIASES[name]


# --- subcommands ----------------------------------------------------------


def cmd_ingest(args, config) -> int:
    path = _require_file(args.input, "input file")
    answer_type = AnswerType.ABSTRACTIVE if args.answer_type == "abstractive" else AnswerType.EXTRACTIVE
    disabled = set(args.disable_filter or [])
    rules = tuple(FilterRule(r.id, enabled=r.id not in disabled) for r in default_filter_rules())
    kwargs = {}
    if args.cloze_pattern:
        kwargs["cloze_patterns"] = tuple(args.cloze_pattern)
    result = ingest_dataset(
        path, args.format, args.dataset, args.split,
        answer_type=answer_type, rules=rules, **kwargs,
    )
    with open(args.output, "w", encoding="utf-8") as fp:
        write_records(result.records, fp)
    manifest_path = args.manifest or f"{args.output}.manifest.json"
    Path(manifest_path).write_text(
        json.dumps(result.manifest.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    for err in result.errors:
        print(f"warning: line {err.line_no}: {err.message}", file=sys.stderr)
    _write_snapshot(args.output, "ingest", {
        "input": str(path), "format": args.format, "dataset": args.dataset,
        "split": args.split, "answer_type": answer_type.value,
        "disabled_filters": sorted(disabled), "cloze_patterns": list(args.cloze_pattern or []),
        "output": args.output, "manifest": str(manifest_path),
    })
    m = result.manifest
    print(f"{m.dataset}/{m.split}: accepted {m.accepted_count}, rejected {sum(m.rejected.values())}")
    return EXIT_OK


def cmd_stats(args, config) -> int:
    manifests = []
    for path in args.manifests:
        p = _require_file(path, "manifest")
        manifests.append(CorpusManifest.from_dict(json.loads(p.read_text(encoding="utf-8"))))
    rows = [
        (m.dataset, m.split, m.accepted_count, sum(m.rejected.values()))
        for m in manifests
    ]
    total_accepted = sum(r[2] for r in rows)
    total_rejected = sum(r[3] for r in rows)
    name_w = max([len(r[0]) for r in rows] + [len("dataset"), len("TOTAL")])
    split_w = max([len(r[1]) for r in rows] + [len("split")])
    print(f"{'dataset':<{name_w}}  {'split':<{split_w}}  {'accepted':>12}  {'rejected':>12}")
    for dataset, split, accepted, rejected in rows:
        print(f"{dataset:<{name_w}}  {split:<{split_w}}  {accepted:>12,}  {rejected:>12,}")
    print(f"{'TOTAL':<{name_w}}  {'':<{split_w}}  {total_accepted:>12,}  {total_rejected:>12,}")
    if args.output:
        summary = {
            "per_dataset": [
                {"dataset": d, "split": s, "accepted": a, "rejected": r}
                for d, s, a, r in rows
            ],
            "total_accepted": total_accepted,
            "total_rejected": total_rejected,
        }
        Path(args.output).write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
        _write_snapshot(args.output, "stats", {"manifests": list(args.manifests), "output": args.output})
    return EXIT_OK


def cmd_encode(args, config) -> int:
    path = _require_file(args.input, "input file")
    scheme = _scheme(_resolve(args.scheme, None, config, "defaults", "scheme", "prepend"))
    extractor = (lambda question: []) if args.entities == "off" else None
    with open(path, encoding="utf-8") as fp:
        records = list(read_records(fp))
    examples, counts = encode_corpus(records, scheme, extractor)
    with open(args.output, "w", encoding="utf-8") as fp:
        write_examples(examples, fp)
    _write_snapshot(args.output, "encode", {
        "input": str(path), "scheme": scheme.value, "entities": args.entities,
        "output": args.output, **counts,
    })
    print(f"encoded {counts['encoded']} examples, skipped {counts['skipped']}")
    return EXIT_OK


def _parse_mix_input(spec_str: str) -> MixInput:
    parts = spec_str.split(":", 2)
    if len(parts) != 3:
        raise UsageError(f"--input must look like dataset:split:path, got {spec_str!r}")
    return MixInput(dataset=parts[0], split=parts[1], path=parts[2])


def cmd_mix(args, config) -> int:
    inputs = [_parse_mix_input(s) for s in args.input]
    for inp in inputs:
        _require_file(inp.path, "mix input")
    plan = MixPlan(inputs=inputs, seed=args.seed, expected_total=args.expected_total)
    summary = mix(plan, args.output)
    summary_path = args.summary or f"{args.output}.summary.json"
    Path(summary_path).write_text(json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    manifest_path = args.training_manifest or f"{args.output}.training.json"
    emit_training_manifest(
        args.output, manifest_path,
        steps=args.steps, learning_rate=args.learning_rate,
        optimizer=args.optimizer, base_checkpoint=args.base_checkpoint,
    )
    _write_snapshot(args.output, "mix", {
        "inputs": [f"{i.dataset}:{i.split}:{i.path}" for i in inputs],
        "seed": args.seed, "expected_total": args.expected_total,
        "output": args.output, "summary": str(summary_path),
        "training_manifest": str(manifest_path),
    })
    for warning in summary.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"mixed {summary.total} examples from {len(inputs)} inputs (seed {summary.seed})")
    return EXIT_OK


def cmd_eval(args, config) -> int:
    predictions = _require_file(args.predictions, "predictions file")
    references = _require_file(args.references, "references file")
    columns = tuple(c.strip() for c in args.metrics.split(",")) if args.metrics else COLUMNS
    emb_url = _resolve(args.emb_url, ENV_EMB_URL, config, "endpoints", "emb_url")
    embedder = EmbeddingClient(emb_url) if emb_url and "bertscore" in columns else None
    pairs = load_eval_pairs(predictions, references)
    metric_config = MetricConfig(
        columns=columns,
        tokenizer_mode=args.tokenizer,
        bleu_smooth=args.bleu_smooth,
        embedder=embedder,
    )
    report = evaluate_corpus(pairs, metric_config)
    Path(args.output).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    _write_snapshot(args.output, "eval", {
        "predictions": str(predictions), "references": str(references),
        "metrics": list(columns), "tokenizer": args.tokenizer,
        "bleu_smooth": args.bleu_smooth, "emb_url": emb_url,
        "output": args.output, "csv": args.csv,
    })
    for col, value in report.table_row().items():
        shown = "unavailable" if value is None else (f"{value:.4f}" if col == "BERTScore" else f"{value:.2f}")
        print(f"{col:>10}: {shown}")
    return EXIT_OK


def cmd_generate(args, config) -> int:
    if args.context is None and args.context_file is None:
        raise UsageError("generate needs --context or --context-file")
    context = args.context
    if context is None:
        context = _require_file(args.context_file, "context file").read_text(encoding="utf-8").strip()
    gen_url = _resolve(args.gen_url, ENV_GEN_URL, config, "endpoints", "gen_url")
    if not gen_url:
        raise UsageError("no generation endpoint configured (--gen-url, QGF_GEN_URL or config)")
    scheme = _scheme(_resolve(args.scheme, None, config, "defaults", "scheme", "prepend"))
    with GenerationClient(gen_url, timeout=args.timeout) as client:
        question = generate_question(
            args.answer, context, client, scheme,
            max_output_tokens=args.max_output_tokens, beam=args.beam,
        )
    print(question)
    return EXIT_OK


def cmd_pipeline(args, config) -> int:
    document = _require_file(args.document, "document").read_text(encoding="utf-8").strip()
    gen_url = _resolve(args.gen_url, ENV_GEN_URL, config, "endpoints", "gen_url")
    sum_url = _resolve(args.sum_url, ENV_SUM_URL, config, "endpoints", "sum_url")
    if not gen_url or not sum_url:
        raise UsageError("pipeline needs both --gen-url and --sum-url (or env/config equivalents)")
    scheme = _scheme(_resolve(args.scheme, None, config, "defaults", "scheme", "prepend"))
    with GenerationClient(sum_url, timeout=args.timeout) as summarizer, \
            GenerationClient(gen_url, timeout=args.timeout) as qg:
        result = summarize_then_qg(
            document, summarizer, qg, scheme,
            beam=args.beam,
            parallelism=args.parallelism,
            window_chars=args.window_chars,
        )
    with open(args.output, "w", encoding="utf-8") as fp:
        write_pairs(result, fp)
    if result.errors:
        Path(f"{args.output}.errors.json").write_text(
            json.dumps([e.to_dict() for e in result.errors], indent=2) + "\n",
            encoding="utf-8",
        )
    _write_snapshot(args.output, "pipeline", {
        "document": args.document, "gen_url": gen_url, "sum_url": sum_url,
        "scheme": scheme.value, "beam": args.beam, "parallelism": args.parallelism,
        "window_chars": args.window_chars, "output": args.output,
    })
    n_sentences = len(split_sentences(result.summary))
    print(f"{len(result.pairs)} pairs, {len(result.errors)} errors ({n_sentences} summary sentences)")
    return EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qgforge", description=__doc__)
    parser.add_argument("--config", help="TOML config file")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ingest", help="parse a source dataset into unified JSONL + manifest")
    p.add_argument("--input", required=True)
    p.add_argument("--format", required=True, choices=["span", "mc", "boolean", "unified"])
    p.add_argument("--dataset", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--answer-type", choices=["extractive", "abstractive"], default="extractive",
                   help="answer type for span-format sources")
    p.add_argument("--output", required=True)
    p.add_argument("--manifest", help="manifest path (default: <output>.manifest.json)")
    p.add_argument("--disable-filter", action="append",
                   choices=["cloze", "unanswerable", "non_self_contained_mc"])
    p.add_argument("--cloze-pattern", action="append",
                   help="regex replacing the default cloze patterns (repeatable)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="summarize manifests into a per-dataset count table")
    p.add_argument("--manifests", nargs="+", required=True)
    p.add_argument("--output", help="also write the summary as JSON")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("encode", help="encode unified records into training pairs")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--scheme", choices=sorted(SCHEME_ALIASES), default=None)
    p.add_argument("--entities", choices=["on", "off"], default="on",
                   help="append question entities to yes/no answers")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("mix", help="concatenate + shuffle encoded corpora deterministically")
    p.add_argument("--input", action="append", required=True, metavar="DATASET:SPLIT:PATH")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--summary", help="summary path (default: <output>.summary.json)")
    p.add_argument("--training-manifest", help="default: <output>.training.json")
    p.add_argument("--expected-total", type=int)
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--learning-rate", type=float, default=3e-5)
    p.add_argument("--optimizer", default="adamw")
    p.add_argument("--base-checkpoint", default="t5-base")
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("eval", help="score predictions against references")
    p.add_argument("--predictions", required=True)
    p.add_argument("--references", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--csv", help="also write a one-row CSV in table column order")
    p.add_argument("--metrics", help=f"comma-separated subset of {','.join(COLUMNS)}")
    p.add_argument("--tokenizer", choices=["default", "as_is"], default="default")
    p.add_argument("--bleu-smooth", action="store_true")
    p.add_argument("--emb-url", help="embedding endpoint for BERTScore")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("generate", help="generate one question from answer + context")
    p.add_argument("--answer", required=True)
    p.add_argument("--context")
    p.add_argument("--context-file")
    p.add_argument("--scheme", choices=sorted(SCHEME_ALIASES), default=None)
    p.add_argument("--gen-url")
    p.add_argument("--beam", type=int, default=DEFAULT_BEAM)
    p.add_argument("--max-output-tokens", type=int, default=DEFAULT_MAX_OUTPUT_TOKENS)
    p.add_argument("--timeout", type=float, default=30.0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("pipeline", help="summarize a document, then generate one question per summary sentence")
    p.add_argument("--document", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--gen-url")
    p.add_argument("--sum-url")
    p.add_argument("--scheme", choices=sorted(SCHEME_ALIASES), default=None)
    p.add_argument("--beam", type=int, default=DEFAULT_BEAM)
    p.add_argument("--parallelism", type=int, default=4)
    p.add_argument("--window-chars", type=int,
                   help="condition QG on a window of this many chars instead of the whole document")
    p.add_argument("--timeout", type=float, default=30.0)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config(args.config)
        return args.func(args, config)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        return EXIT_RUNTIME
    except Exception as exc:  # runtime failure, distinct from usage errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
