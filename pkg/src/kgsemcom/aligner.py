"""Text-to-graph alignment: find which known triples a message mentions.

A triple matches a sentence when both its head and tail labels occur in the
sentence (case-insensitive, token-boundary occurrences).  Relations carry no
surface form reliable enough to match, so they are not required to appear.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .kg_store import KnowledgeGraph, Triple

# split after . ! ? when followed by whitespace or end of text, so decimals
# like 2702.0 stay intact and the delimiter stays with its sentence
_SENTENCE_END = re.compile(r"(?<=[.!?])(?=\s|$)")


@dataclass(frozen=True)
class AlignmentResult:
    sentences: tuple[str, ...]
    sentence_triples: tuple[tuple[Triple, ...], ...]
    message_triples: tuple[Triple, ...]


def split_sentences(text: str) -> list[str]:
    return [part.strip() for part in _SENTENCE_END.split(text) if part.strip()]


def _canon(text: str) -> str:
    return " ".join(text.split()).casefold()


def _occurs(label: str, sentence: str) -> bool:
    """Token-boundary substring check; both arguments already canonical."""
    start = sentence.find(label)
    while start != -1:
        end = start + len(label)
        left_ok = start == 0 or not sentence[start - 1].isalnum()
        right_ok = end == len(sentence) or not sentence[end].isalnum()
        if left_ok and right_ok:
            return True
        start = sentence.find(label, start + 1)
    return False


def align(text: str, kg: KnowledgeGraph) -> AlignmentResult:
    """Match every sentence against the graph and merge into a message-level list.

    The merged list is deduplicated and ordered by codebook (graph) position,
    so two texts mentioning the same labels always map to the same symbols.
    """
    sentences = split_sentences(text)
    canon_entities = [(e, _canon(e)) for e in kg.entities]
    per_sentence = []
    matched: set[Triple] = set()
    for sentence in sentences:
        canon = _canon(sentence)
        present = {e for e, ce in canon_entities if _occurs(ce, canon)}
        hits = tuple(t for t in kg.triples if t.head in present and t.tail in present)
        per_sentence.append(hits)
        matched.update(hits)
    order = {t: i for i, t in enumerate(kg.triples)}
    message = tuple(sorted(matched, key=order.__getitem__))
    return AlignmentResult(
        sentences=tuple(sentences),
        sentence_triples=tuple(per_sentence),
        message_triples=message,
    )
