"""End-to-end transmission experiments.

run_pipeline pushes one reference text through a chosen system (semantic
symbols, Huffman characters, or fixed 7-bit characters), over the coded
channel at a given crossover probability, and scores what comes back.  sweep
fans that out over a (p, trial) grid for a corpus, deterministically: channel
noise for each row is keyed by (base seed, derived stream id), so the same
config always writes byte-identical CSV no matter how rows are scheduled.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .adapter_client import AdapterClient
from .aligner import align
from .baseline_codecs import (
    CodecError,
    HuffmanTruncationError,
    HuffmanTable,
    fixed7_decode,
    fixed7_encode,
    huffman_build,
    huffman_decode,
    huffman_encode,
)
from .channel_codec import (
    DEFAULT_CODE,
    ChannelConfig,
    ConvCodeConfig,
    bsc_transmit,
    conv_encode,
    viterbi_decode,
)
from .corpus import Corpus, SourceSample
from .kg_corrector import Codebook, FrameSyncError, correct_payload
from .kg_store import KnowledgeGraph, SymbolDictionary, build_dictionary, build_kg
from .kg_store import codebook as build_codebook_pairs
from .metrics import (
    EntropyReport,
    Vocabulary,
    bleu,
    build_vocab,
    cosine_score,
    entropy_report,
    lexical_embed,
    tokenize,
)
from .realizer import REALIZER_KINDS, realize
from .symbol_codec import COUNT_BITS, decode_symbols, encode_symbols

SYSTEMS = ("semantic", "huffman", "fixed7")
EMBEDDER_KINDS = ("lexical", "adapter")

CSV_COLUMNS = (
    "sample_id",
    "text_ix",
    "system",
    "p",
    "trial",
    "stream_id",
    "pre_bits",
    "post_bits",
    "untransmittable",
    "frame_sync_failure",
    "received_text",
    "bleu",
    "cosine",
)


@dataclass(frozen=True)
class SweepConfig:
    p_values: tuple[float, ...] = (0.0, 0.01, 0.02, 0.05, 0.1, 0.15, 0.2)
    trials: int = 5
    base_seed: int = 2024
    systems: tuple[str, ...] = SYSTEMS
    realizer: str = "template"
    embedder: str = "lexical"
    max_samples: Optional[int] = None

    def __post_init__(self):
        if not self.p_values or any(not 0 <= p <= 1 for p in self.p_values):
            raise ValueError("p_values must be non-empty probabilities in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        unknown = set(self.systems) - set(SYSTEMS)
        if unknown or not self.systems:
            raise ValueError(f"unknown systems {sorted(unknown)}; expected members of {SYSTEMS}")
        if self.realizer not in REALIZER_KINDS:
            raise ValueError(f"unknown realizer kind {self.realizer!r}")
        if self.embedder not in EMBEDDER_KINDS:
            raise ValueError(f"unknown embedder kind {self.embedder!r}")

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(obj, dict):
            raise ValueError(f"{path}: sweep config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
        for key in ("p_values", "systems"):
            if key in obj:
                obj[key] = tuple(obj[key])
        return cls(**obj)


@dataclass
class PipelineReport:
    sample_id: str
    text_ix: int
    system: str
    p: float
    trial: int
    stream_id: int
    pre_bits: Optional[int]
    post_bits: Optional[int]
    untransmittable: bool
    frame_sync_failure: bool
    received_text: str
    bleu: Optional[float]
    cosine: Optional[float]
    sent_triples: tuple = field(default=(), repr=False, compare=False)
    received_triples: tuple = field(default=(), repr=False, compare=False)


def derive_stream_id(sample_id: str, text_ix: int, p: float, trial: int) -> int:
    """Stable 64-bit stream id so each transmission replays independently."""
    key = f"{sample_id}\x1f{text_ix}\x1f{p:.17g}\x1f{trial}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


@dataclass
class PipelineContext:
    """Everything prebuilt once per corpus: graph, codebooks, tables, caches."""

    kg: KnowledgeGraph
    dictionary: SymbolDictionary
    codebook: Codebook
    huffman: HuffmanTable
    vocab: Vocabulary
    conv: ConvCodeConfig = DEFAULT_CODE
    realizer_kind: str = "template"
    embedder_kind: str = "lexical"
    adapter: Optional[AdapterClient] = None
    _aligned: dict = field(default_factory=dict, repr=False)
    _source_bits: dict = field(default_factory=dict, repr=False)
    _ref_embed: dict = field(default_factory=dict, repr=False)

    def aligned_triples(self, sample: SourceSample, text_ix: int):
        key = (sample.id, text_ix)
        if key not in self._aligned:
            self._aligned[key] = align(sample.texts[text_ix], self.kg).message_triples
        return self._aligned[key]

    def source_bits(self, sample: SourceSample, text_ix: int, system: str):
        """Pre-channel bit vector, or None when the text cannot be encoded."""
        key = (sample.id, text_ix, system)
        if key not in self._source_bits:
            text = sample.texts[text_ix]
            bits = None
            if system == "semantic":
                triples = self.aligned_triples(sample, text_ix)
                if triples:
                    bits = encode_symbols(triples, self.dictionary).bits
            elif system == "fixed7":
                try:
                    bits = fixed7_encode(text)
                except CodecError:
                    bits = None
            elif system == "huffman":
                try:
                    bits = huffman_encode(text, self.huffman)
                except CodecError:
                    bits = None
            else:
                raise ValueError(f"unknown system {system!r}; expected one of {SYSTEMS}")
            self._source_bits[key] = bits
        return self._source_bits[key]

    def embed(self, text: str):
        if self.embedder_kind == "adapter":
            if self.adapter is None:
                raise ValueError("adapter embedder requested but no adapter client given")
            return self.adapter.embed(text)
        return lexical_embed(text, self.vocab)

    def embed_reference(self, text: str):
        if text not in self._ref_embed:
            self._ref_embed[text] = self.embed(text)
        return self._ref_embed[text]


def build_context(
    corpus: Corpus,
    train_corpus: Optional[Corpus] = None,
    realizer_kind: str = "template",
    embedder_kind: str = "lexical",
    adapter: Optional[AdapterClient] = None,
    conv: ConvCodeConfig = DEFAULT_CODE,
) -> PipelineContext:
    """Build the shared graph and coding tables for a corpus.

    The graph and vocabulary come from the corpus being transmitted; the
    Huffman table comes from the training split when one is given (with the
    escape code enabled for characters the split never saw).
    """
    kg = build_kg(corpus)
    dictionary = build_dictionary(kg)
    book = Codebook.from_pairs(build_codebook_pairs(kg, dictionary))
    huffman = huffman_build(train_corpus or corpus, include_escape=True)
    vocab = build_vocab(corpus.texts())
    return PipelineContext(
        kg=kg,
        dictionary=dictionary,
        codebook=book,
        huffman=huffman,
        vocab=vocab,
        conv=conv,
        realizer_kind=realizer_kind,
        embedder_kind=embedder_kind,
        adapter=adapter,
    )


def _score(ctx: PipelineContext, received: str, original: str, references) -> tuple[float, float]:
    if not received or not tokenize(received):
        return 0.0, 0.0
    b = bleu(received, list(references))
    c = cosine_score(ctx.embed(received), ctx.embed_reference(original))
    return b, c


def run_pipeline(
    ctx: PipelineContext,
    sample: SourceSample,
    text_ix: int = 0,
    *,
    system: str,
    p: float,
    seed: int,
    trial: int = 0,
) -> PipelineReport:
    text = sample.texts[text_ix]
    stream = derive_stream_id(sample.id, text_ix, p, trial)
    report = PipelineReport(
        sample_id=sample.id,
        text_ix=text_ix,
        system=system,
        p=p,
        trial=trial,
        stream_id=stream,
        pre_bits=None,
        post_bits=None,
        untransmittable=False,
        frame_sync_failure=False,
        received_text="",
        bleu=None,
        cosine=None,
    )
    source = ctx.source_bits(sample, text_ix, system)
    if source is None:
        report.untransmittable = True
        return report

    coded = conv_encode(source, ctx.conv)
    received = bsc_transmit(coded, ChannelConfig(p=p, seed=seed), stream)
    decoded = viterbi_decode(received, ctx.conv)
    report.pre_bits = int(source.size)
    report.post_bits = int(coded.size)

    if system == "semantic":
        report.sent_triples = ctx.aligned_triples(sample, text_ix)
        try:
            corrected = correct_payload(decoded, ctx.codebook)
        except FrameSyncError:
            report.frame_sync_failure = True
            report.bleu = 0.0
            report.cosine = 0.0
            return report
        report.received_triples = decode_symbols(corrected, ctx.dictionary)
        text_out = realize(report.received_triples, ctx.realizer_kind, ctx.adapter)
    elif system == "fixed7":
        text_out = fixed7_decode(decoded)
    else:
        try:
            text_out = huffman_decode(decoded, ctx.huffman)
        except HuffmanTruncationError as exc:
            text_out = exc.partial
        except CodecError:
            text_out = ""

    report.received_text = text_out
    report.bleu, report.cosine = _score(ctx, text_out, text, sample.texts)
    return report


def sweep(corpus: Corpus, config: SweepConfig, train_corpus: Optional[Corpus] = None,
          adapter: Optional[AdapterClient] = None) -> list[PipelineReport]:
    """All (sample, text, system, p, trial) rows, sorted for stable output."""
    ctx = build_context(
        corpus,
        train_corpus=train_corpus,
        realizer_kind=config.realizer,
        embedder_kind=config.embedder,
        adapter=adapter,
    )
    samples = corpus.samples[: config.max_samples] if config.max_samples else corpus.samples
    reports = []
    for sample in samples:
        for text_ix in range(len(sample.texts)):
            for system in config.systems:
                for p in config.p_values:
                    for trial in range(config.trials):
                        reports.append(
                            run_pipeline(
                                ctx,
                                sample,
                                text_ix,
                                system=system,
                                p=p,
                                seed=config.base_seed,
                                trial=trial,
                            )
                        )
    reports.sort(key=lambda r: (r.sample_id, r.text_ix, r.system, r.p, r.trial))
    return reports


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        # Noisy character decodes can contain NULs and other control
        # bytes the csv module refuses to write; escape losslessly.
        return value.encode("unicode_escape").decode("ascii")
    return str(value)


def reports_to_csv(reports: Sequence[PipelineReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow([_cell(getattr(r, col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def write_reports_csv(reports: Sequence[PipelineReport], path) -> None:
    Path(path).write_text(reports_to_csv(reports), encoding="utf-8", newline="")


# -- compression comparison ---------------------------------------------------

COMPARE_COLUMNS = (
    "sample_id",
    "text_ix",
    "chars",
    "triples",
    "semantic_bits",
    "huffman_bits",
    "fixed7_bits",
)
CUMULATIVE_COLUMNS = ("texts", "semantic_bits", "huffman_bits", "fixed7_bits")


def compare_compression(corpus: Corpus, train_corpus: Optional[Corpus] = None):
    """Pre-channel source-coding cost of each scheme, per text and cumulative.

    Rows where any scheme cannot encode the text (no aligned triples, or a
    character outside its reach) keep the blank cell in the per-text table and
    are left out of the cumulative totals entirely, so the running sums always
    compare the three schemes on the same texts.
    """
    kg = build_kg(corpus)
    dictionary = build_dictionary(kg)
    table = huffman_build(train_corpus or corpus, include_escape=True)
    per_text = []
    cumulative = []
    sums = {"semantic": 0, "huffman": 0, "fixed7": 0}
    counted = 0
    for sample in corpus.samples:
        for text_ix, text in enumerate(sample.texts):
            k = len(align(text, kg).message_triples)
            sem = COUNT_BITS + k * dictionary.frame_bits if k else None
            try:
                huff = int(huffman_encode(text, table).size)
            except CodecError:
                huff = None
            try:
                f7 = int(fixed7_encode(text).size)
            except CodecError:
                f7 = None
            per_text.append((sample.id, text_ix, len(text), k, sem, huff, f7))
            if None not in (sem, huff, f7):
                counted += 1
                sums["semantic"] += sem
                sums["huffman"] += huff
                sums["fixed7"] += f7
                cumulative.append((counted, sums["semantic"], sums["huffman"], sums["fixed7"]))
    return per_text, cumulative


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


# -- corpus entropy -----------------------------------------------------------


def corpus_message_distribution(corpus: Corpus) -> dict[str, float]:
    """Empirical distribution over reference texts (each occurrence counts once)."""
    counts = Counter(corpus.texts())
    total = sum(counts.values())
    return {text: n / total for text, n in counts.items()}


def corpus_entropy(corpus: Corpus) -> EntropyReport:
    """Entropy bookkeeping for mapping this corpus's texts onto graph symbols."""
    kg = build_kg(corpus)
    cache: dict[str, tuple] = {}

    def to_symbols(text: str):
        if text not in cache:
            cache[text] = align(text, kg).message_triples
        return cache[text]

    return entropy_report(corpus_message_distribution(corpus), to_symbols)
