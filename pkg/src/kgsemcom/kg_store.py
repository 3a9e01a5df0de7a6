"""Shared knowledge graph and the fixed-width bit frames for its triples.

The graph is the codebook both ends of the link agree on: every triple gets
one frame of ``2 * entity_bits + relation_bits`` bits (head id, relation id,
tail id, each big-endian fixed width), and ids are assigned by lexicographic
label order so that rebuilding from the same corpus always yields the same
bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .bits import int_to_bits

if TYPE_CHECKING:
    from .corpus import Corpus


@dataclass(frozen=True, order=True)
class Triple:
    head: str
    relation: str
    tail: str

    def __post_init__(self):
        if not (self.head and self.relation and self.tail):
            raise ValueError(f"triple labels must be non-empty: {self!r}")


@dataclass(frozen=True)
class KnowledgeGraph:
    """Deduplicated triples plus the sorted entity and relation inventories."""

    triples: tuple[Triple, ...]
    entities: tuple[str, ...]
    relations: tuple[str, ...]


@dataclass(frozen=True)
class SymbolDictionary:
    """Bijective label-to-id maps and the derived frame geometry."""

    entities: tuple[str, ...]
    relations: tuple[str, ...]
    entity_bits: int
    relation_bits: int

    @property
    def frame_bits(self) -> int:
        return 2 * self.entity_bits + self.relation_bits

    @property
    def entity_ids(self) -> dict[str, int]:
        return self._entity_ids

    @property
    def relation_ids(self) -> dict[str, int]:
        return self._relation_ids

    def __post_init__(self):
        object.__setattr__(self, "_entity_ids", {e: i for i, e in enumerate(self.entities)})
        object.__setattr__(self, "_relation_ids", {r: i for i, r in enumerate(self.relations)})


def _id_width(count: int) -> int:
    return math.ceil(math.log2(max(count, 2)))


def build_kg(corpus: "Corpus") -> KnowledgeGraph:
    """Collect the corpus triples into a graph; labels are already normalized."""
    triples = sorted({t for sample in corpus.samples for t in sample.triples})
    if not triples:
        raise ValueError("corpus contains no triples; nothing to build a graph from")
    entities = sorted({t.head for t in triples} | {t.tail for t in triples})
    relations = sorted({t.relation for t in triples})
    return KnowledgeGraph(tuple(triples), tuple(entities), tuple(relations))


def build_dictionary(kg: KnowledgeGraph) -> SymbolDictionary:
    return SymbolDictionary(
        entities=kg.entities,
        relations=kg.relations,
        entity_bits=_id_width(len(kg.entities)),
        relation_bits=_id_width(len(kg.relations)),
    )


def triple_frame(triple: Triple, dictionary: SymbolDictionary) -> np.ndarray:
    """Fixed-width frame for one triple: head id, relation id, tail id."""
    try:
        h = dictionary.entity_ids[triple.head]
        r = dictionary.relation_ids[triple.relation]
        t = dictionary.entity_ids[triple.tail]
    except KeyError as exc:
        raise KeyError(f"label not in dictionary: {exc.args[0]!r}") from None
    return np.concatenate(
        [
            int_to_bits(h, dictionary.entity_bits),
            int_to_bits(r, dictionary.relation_bits),
            int_to_bits(t, dictionary.entity_bits),
        ]
    )


def codebook(kg: KnowledgeGraph, dictionary: SymbolDictionary) -> list[tuple[Triple, np.ndarray]]:
    """All triples with their frames, in graph (lexicographic) order."""
    return [(t, triple_frame(t, dictionary)) for t in kg.triples]


def save_dictionary(dictionary: SymbolDictionary, path) -> None:
    lines = ["kind\tlabel\tid"]
    lines += [f"entity\t{label}\t{i}" for i, label in enumerate(dictionary.entities)]
    lines += [f"relation\t{label}\t{i}" for i, label in enumerate(dictionary.relations)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_dictionary(path) -> SymbolDictionary:
    """Rebuild a dictionary from its TSV export; ids must be dense and unique."""
    entities: dict[int, str] = {}
    relations: dict[int, str] = {}
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}: line {lineno}: expected 3 tab-separated fields")
        kind, label, raw_id = parts
        table = {"entity": entities, "relation": relations}.get(kind)
        if table is None:
            raise ValueError(f"{path}: line {lineno}: unknown kind {kind!r}")
        ident = int(raw_id)
        if ident in table:
            raise ValueError(f"{path}: line {lineno}: duplicate {kind} id {ident}")
        table[ident] = label
    for name, table in (("entity", entities), ("relation", relations)):
        if sorted(table) != list(range(len(table))):
            raise ValueError(f"{path}: {name} ids are not dense from 0")
        if len(set(table.values())) != len(table):
            raise ValueError(f"{path}: duplicate {name} labels")
    if not entities or not relations:
        raise ValueError(f"{path}: dictionary must contain entities and relations")
    return SymbolDictionary(
        entities=tuple(entities[i] for i in range(len(entities))),
        relations=tuple(relations[i] for i in range(len(relations))),
        entity_bits=_id_width(len(entities)),
        relation_bits=_id_width(len(relations)),
    )
