"""Command-line front end."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .adapter_client import AdapterClient, AdapterTransportError
from .baseline_codecs import huffman_build, save_huffman
from .corpus import load_corpus, save_corpus
from .harness import (
    COMPARE_COLUMNS,
    CUMULATIVE_COLUMNS,
    SweepConfig,
    build_context,
    compare_compression,
    corpus_entropy,
    reports_to_csv,
    rows_to_csv,
    run_pipeline,
    sweep,
)
from .kg_store import build_dictionary, build_kg, save_dictionary


def _add_corpus_args(sub, train_too=True):
    sub.add_argument("--corpus", required=True, help="line-delimited JSON corpus to transmit")
    sub.add_argument("--split", default="test", choices=("train", "test"))
    if train_too:
        sub.add_argument(
            "--train-corpus",
            help="corpus supplying Huffman character frequencies (defaults to --corpus)",
        )


def _load(args, train_too=True):
    corpus = load_corpus(args.corpus, args.split)
    train = None
    if train_too and getattr(args, "train_corpus", None):
        train = load_corpus(args.train_corpus, "train")
    return corpus, train


def _adapter_if_needed(*kinds) -> AdapterClient | None:
    return AdapterClient() if "adapter" in kinds else None


def cmd_ingest(args) -> int:
    corpus = load_corpus(args.path, args.split)
    n_texts = sum(len(s.texts) for s in corpus.samples)
    n_triples = sum(len(s.triples) for s in corpus.samples)
    print(
        f"{args.path}: {len(corpus.samples)} samples, {n_texts} texts, "
        f"{n_triples} triples ({args.split} split)"
    )
    if args.out:
        save_corpus(corpus, args.out)
        print(f"wrote normalized corpus to {args.out}")
    return 0


def cmd_build(args) -> int:
    corpus = load_corpus(args.corpus, args.split)
    kg = build_kg(corpus)
    dictionary = build_dictionary(kg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_dictionary(dictionary, out_dir / "dictionary.tsv")
    save_huffman(huffman_build(corpus, include_escape=True), out_dir / "huffman.tsv")
    print(
        f"graph: {len(kg.triples)} triples, {len(kg.entities)} entities, "
        f"{len(kg.relations)} relations; frame is {dictionary.frame_bits} bits"
    )
    print(f"wrote {out_dir / 'dictionary.tsv'} and {out_dir / 'huffman.tsv'}")
    return 0


def cmd_run(args) -> int:
    corpus, train = _load(args)
    by_id = {s.id: s for s in corpus.samples}
    if args.sample not in by_id:
        print(f"sample {args.sample!r} not found in {args.corpus}", file=sys.stderr)
        return 2
    sample = by_id[args.sample]
    adapter = _adapter_if_needed(args.realizer, args.embedder)
    try:
        ctx = build_context(
            corpus, train, realizer_kind=args.realizer,
            embedder_kind=args.embedder, adapter=adapter,
        )
        indices = [args.text_ix] if args.text_ix is not None else range(len(sample.texts))
        for text_ix in indices:
            report = run_pipeline(
                ctx, sample, text_ix,
                system=args.system, p=args.p, seed=args.seed, trial=args.trial,
            )
            row = {k: v for k, v in dataclasses.asdict(report).items()
                   if k not in ("sent_triples", "received_triples")}
            print(json.dumps(row))
    finally:
        if adapter:
            adapter.close()
    return 0


def cmd_sweep(args) -> int:
    config = SweepConfig.from_json(args.config)
    corpus, train = _load(args)
    adapter = _adapter_if_needed(config.realizer, config.embedder)
    try:
        reports = sweep(corpus, config, train_corpus=train, adapter=adapter)
    finally:
        if adapter:
            adapter.close()
    Path(args.out).write_text(reports_to_csv(reports), encoding="utf-8", newline="")
    print(f"wrote {len(reports)} rows to {args.out}")
    return 0


def cmd_compare(args) -> int:
    corpus, train = _load(args)
    per_text, cumulative = compare_compression(corpus, train)
    prefix = Path(args.out_prefix)
    per_text_path = prefix.with_name(prefix.name + "_per_text.csv")
    cumulative_path = prefix.with_name(prefix.name + "_cumulative.csv")
    per_text_path.write_text(rows_to_csv(per_text, COMPARE_COLUMNS), encoding="utf-8", newline="")
    cumulative_path.write_text(rows_to_csv(cumulative, CUMULATIVE_COLUMNS), encoding="utf-8", newline="")
    print(f"wrote {per_text_path} and {cumulative_path}")
    return 0


def cmd_entropy(args) -> int:
    corpus, _ = _load(args, train_too=False)
    report = corpus_entropy(corpus)
    for name in ("h_m", "h_s", "h_s_given_m", "h_m_given_s", "mutual_information", "entropy_loss"):
        print(f"{name}\t{getattr(report, name):.6f}")
    if args.out:
        rows = [(name, getattr(report, name)) for name in (
            "h_m", "h_s", "h_s_given_m", "h_m_given_s", "mutual_information", "entropy_loss")]
        Path(args.out).write_text(rows_to_csv(rows, ("quantity", "bits")), encoding="utf-8", newline="")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgsemcom",
        description="Graph-symbol communication experiments over a noisy binary channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a corpus file and report its shape")
    p.add_argument("path")
    p.add_argument("--split", default="test", choices=("train", "test"))
    p.add_argument("--out", help="write the normalized corpus back out as JSON lines")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build", help="emit the symbol dictionary and Huffman table")
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", default="train", choices=("train", "test"))
    p.add_argument("--out-dir", default="artifacts")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="transmit one sample and print the report rows")
    _add_corpus_args(p)
    p.add_argument("--sample", required=True)
    p.add_argument("--text-ix", type=int, default=None)
    p.add_argument("--system", default="semantic", choices=("semantic", "huffman", "fixed7"))
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--realizer", default="template", choices=("template", "adapter"))
    p.add_argument("--embedder", default="lexical", choices=("lexical", "adapter"))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run the full (p, trial) grid and write CSV")
    _add_corpus_args(p)
    p.add_argument("--config", required=True, help="JSON file mirroring SweepConfig")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="compare source-coding cost per scheme")
    _add_corpus_args(p)
    p.add_argument("--out-prefix", default="compare")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("entropy", help="entropy of the corpus text distribution vs its symbols")
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", default="test", choices=("train", "test"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_entropy)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, AdapterTransportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
