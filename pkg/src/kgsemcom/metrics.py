"""Information and fidelity metrics.

Covers the entropy bookkeeping of mapping messages onto graph symbols
(message entropy, symbol entropy, conditional terms and the resulting loss),
lexical cosine similarity with a pluggable embedder, n-gram BLEU, and the
pre/post channel bit accounting used by the compression comparisons.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .aligner import align
from .baseline_codecs import fixed7_encode, huffman_encode
from .symbol_codec import COUNT_BITS

_TOKEN = re.compile(r"\w+")

SCHEMES = ("semantic", "huffman", "fixed7")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


# -- entropy over message/symbol distributions --------------------------------


@dataclass(frozen=True)
class EntropyReport:
    h_m: float
    h_s: float
    h_s_given_m: float
    h_m_given_s: float
    mutual_information: float
    entropy_loss: float


def _validate_distribution(dist: Mapping) -> None:
    if not dist:
        raise ValueError("distribution is empty")
    if any(p < 0 for p in dist.values()):
        raise ValueError("distribution has negative probabilities")
    total = math.fsum(dist.values())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"distribution sums to {total!r}, not 1")


def _entropy(probs) -> float:
    return -math.fsum(p * math.log2(p) for p in probs if p > 0)


def message_entropy(dist: Mapping[str, float]) -> float:
    _validate_distribution(dist)
    return _entropy(dist.values())


def semantic_distribution(dist: Mapping[str, float], f: Callable) -> dict:
    """Push the message distribution through the (deterministic) symbol map."""
    _validate_distribution(dist)
    out: dict = {}
    for m, p in dist.items():
        s = f(m)
        out[s] = out.get(s, 0.0) + p
    return out


def entropy_report(dist: Mapping[str, float], f: Callable) -> EntropyReport:
    _validate_distribution(dist)
    h_m = _entropy(dist.values())
    groups: dict = {}
    for m, p in dist.items():
        groups.setdefault(f(m), []).append(p)
    symbol_probs = {s: math.fsum(ps) for s, ps in groups.items()}
    h_s = _entropy(symbol_probs.values())
    # f is deterministic, so knowing the message fixes the symbol
    h_s_given_m = 0.0
    h_m_given_s = -math.fsum(
        p * math.log2(p / symbol_probs[s])
        for s, ps in groups.items()
        for p in ps
        if p > 0
    )
    return EntropyReport(
        h_m=h_m,
        h_s=h_s,
        h_s_given_m=h_s_given_m,
        h_m_given_s=h_m_given_s,
        mutual_information=h_m - h_m_given_s,
        entropy_loss=h_m - h_s,
    )


# -- similarity ----------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingVector:
    vector: np.ndarray
    provenance: str = "lexical"


@dataclass(frozen=True)
class Vocabulary:
    tokens: tuple[str, ...]

    @cached_property
    def index(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.tokens)}

    def __len__(self) -> int:
        return len(self.tokens)


def build_vocab(texts) -> Vocabulary:
    seen = set()
    for text in texts:
        seen.update(tokenize(text))
    return Vocabulary(tuple(sorted(seen)))


def lexical_embed(text: str, vocab: Vocabulary) -> EmbeddingVector:
    """Term-frequency vector over the vocabulary plus one pooled OOV slot."""
    if not text.strip():
        raise ValueError("cannot embed empty text")
    tokens = tokenize(text) or [text.strip().lower()]
    vec = np.zeros(len(vocab) + 1, dtype=np.float64)
    index = vocab.index
    oov = len(vocab)
    for tok in tokens:
        vec[index.get(tok, oov)] += 1.0
    return EmbeddingVector(vec, provenance="lexical")


def cosine_score(a, b) -> float:
    x = np.asarray(a.vector if isinstance(a, EmbeddingVector) else a, dtype=np.float64)
    y = np.asarray(b.vector if isinstance(b, EmbeddingVector) else b, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"embedding shapes differ: {x.shape} vs {y.shape}")
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ValueError("cosine similarity is undefined for zero vectors")
    return float(np.dot(x, y) / (nx * ny))


# -- BLEU ------------------------------------------------------------------


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _closest_ref_length(c: int, ref_lengths: Sequence[int]) -> int:
    return min(ref_lengths, key=lambda r: (abs(r - c), r))


def bleu(candidate: str, references: Sequence[str], max_n: int = 4) -> float:
    """Geometric mean of clipped n-gram precisions times the brevity penalty.

    Orders run from 1 up to min(max_n, candidate length) so a candidate equal
    to its reference always scores 1; any zero precision zeroes the score (no
    smoothing).
    """
    if not candidate or not references or any(not r for r in references):
        raise ValueError("bleu needs a candidate and at least one non-empty reference")
    cand = tokenize(candidate)
    refs = [tokenize(r) for r in references]
    refs = [r for r in refs if r]
    if not cand or not refs:
        return 0.0
    logs = []
    for n in range(1, min(max_n, len(cand)) + 1):
        cand_grams = _ngrams(cand, n)
        best: Counter = Counter()
        for ref in refs:
            for gram, count in _ngrams(ref, n).items():
                if count > best[gram]:
                    best[gram] = count
        clipped = sum(min(count, best[gram]) for gram, count in cand_grams.items())
        if clipped == 0:
            return 0.0
        logs.append(math.log(clipped / sum(cand_grams.values())))
    c = len(cand)
    r = _closest_ref_length(c, [len(ref) for ref in refs])
    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return bp * math.exp(math.fsum(logs) / len(logs))


def corpus_bleu(candidates: Sequence[str], references: Sequence[Sequence[str]], max_n: int = 4) -> float:
    """Aggregate clipped counts over all pairs before combining."""
    if len(candidates) != len(references) or not candidates:
        raise ValueError("need equally many candidates and reference lists")
    clipped = [0] * max_n
    totals = [0] * max_n
    c_total = 0
    r_total = 0
    for candidate, refs in zip(candidates, references):
        if not candidate or not refs or any(not r for r in refs):
            raise ValueError("bleu needs a candidate and at least one non-empty reference")
        cand = tokenize(candidate)
        ref_tokens = [tokenize(r) for r in refs]
        ref_tokens = [r for r in ref_tokens if r]
        if not cand or not ref_tokens:
            continue
        c_total += len(cand)
        r_total += _closest_ref_length(len(cand), [len(r) for r in ref_tokens])
        for n in range(1, min(max_n, len(cand)) + 1):
            cand_grams = _ngrams(cand, n)
            best: Counter = Counter()
            for ref in ref_tokens:
                for gram, count in _ngrams(ref, n).items():
                    if count > best[gram]:
                        best[gram] = count
            clipped[n - 1] += sum(min(count, best[gram]) for gram, count in cand_grams.items())
            totals[n - 1] += sum(cand_grams.values())
    if c_total == 0:
        return 0.0
    logs = []
    for num, den in zip(clipped, totals):
        if den == 0:
            continue
        if num == 0:
            return 0.0
        logs.append(math.log(num / den))
    bp = 1.0 if c_total > r_total else math.exp(1.0 - r_total / c_total)
    return bp * math.exp(math.fsum(logs) / len(logs))


# -- bit accounting ----------------------------------------------------------


def count_bits(text: str, scheme: str, *, kg=None, dictionary=None, table=None):
    """(pre-channel, post-channel) bit counts for one text under one scheme.

    The post-channel count includes the rate-1/2 expansion and the two flush
    bits.  Returns None when the semantic scheme has nothing to transmit (no
    triple aligns).
    """
    if scheme == "semantic":
        if kg is None or dictionary is None:
            raise ValueError("semantic bit counting needs kg and dictionary")
        k = len(align(text, kg).message_triples)
        if k == 0:
            return None
        pre = COUNT_BITS + k * dictionary.frame_bits
    elif scheme == "fixed7":
        pre = int(fixed7_encode(text).size)
    elif scheme == "huffman":
        if table is None:
            raise ValueError("huffman bit counting needs a table")
        pre = int(huffman_encode(text, table).size)
    else:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return pre, 2 * (pre + 2)
