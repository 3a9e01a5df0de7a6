"""Corpus ingestion.

One sample per line of UTF-8 JSON: ``{"id": ..., "triples": [[h, r, t], ...],
"texts": [...]}``, the shape WebNLG-style exports flatten to.  Labels are
normalized on the way in; reference texts are kept verbatim.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .kg_store import Triple

SPLITS = ("train", "test")

_WS_RUN = re.compile(r"\s+")


class CorpusError(ValueError):
    pass


def normalize_label(raw: str) -> str:
    """Underscores to spaces, whitespace runs collapsed, ends trimmed.

    Case is preserved; the result is a fixed point of the function.
    """
    return _WS_RUN.sub(" ", raw.replace("_", " ")).strip()


@dataclass(frozen=True)
class SourceSample:
    id: str
    triples: tuple[Triple, ...]
    texts: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    samples: tuple[SourceSample, ...]
    split: str

    def texts(self):
        for sample in self.samples:
            yield from sample.texts


def _parse_sample(obj, where: str) -> SourceSample:
    if not isinstance(obj, dict):
        raise CorpusError(f"{where}: sample must be a JSON object")
    ident = obj.get("id")
    if not isinstance(ident, str) or not ident.strip():
        raise CorpusError(f"{where}: missing or empty sample id")
    raw_triples = obj.get("triples")
    if not isinstance(raw_triples, list):
        raise CorpusError(f"{where}: 'triples' must be a list")
    triples = []
    for k, item in enumerate(raw_triples):
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(x, str) for x in item)):
            raise CorpusError(f"{where}: triple {k} must be a [head, relation, tail] list of strings")
        labels = [normalize_label(x) for x in item]
        if not all(labels):
            raise CorpusError(f"{where}: triple {k} has an empty label after normalization")
        triples.append(Triple(*labels))
    raw_texts = obj.get("texts")
    if not (isinstance(raw_texts, list) and raw_texts and all(isinstance(t, str) for t in raw_texts)):
        raise CorpusError(f"{where}: 'texts' must be a non-empty list of strings")
    if any(not t.strip() for t in raw_texts):
        raise CorpusError(f"{where}: blank reference text")
    return SourceSample(id=ident, triples=tuple(triples), texts=tuple(raw_texts))


def load_corpus(path, split: str) -> Corpus:
    if split not in SPLITS:
        raise CorpusError(f"unknown split {split!r}; expected one of {SPLITS}")
    path = Path(path)
    samples = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}: line {lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{where}: invalid JSON ({exc.msg})") from None
            sample = _parse_sample(obj, where)
            if sample.id in seen:
                raise CorpusError(
                    f"{where}: duplicate sample id {sample.id!r} (first seen on line {seen[sample.id]})"
                )
            seen[sample.id] = lineno
            samples.append(sample)
    if not samples:
        raise CorpusError(f"{path}: corpus is empty")
    return Corpus(samples=tuple(samples), split=split)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in corpus.samples:
            obj = {
                "id": s.id,
                "triples": [[t.head, t.relation, t.tail] for t in s.triples],
                "texts": list(s.texts),
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
