"""Packing aligned triples into a transmittable bit payload and back.

Payload layout: an 8-bit big-endian triple count followed by one fixed-width
frame per triple.  The count prefix is what lets the receiver cut the frame
boundaries, so it is the one part of the payload the graph cannot repair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import as_bit_array, bits_to_int, int_to_bits
from .kg_store import SymbolDictionary, Triple, triple_frame

COUNT_BITS = 8
MAX_TRIPLES = (1 << COUNT_BITS) - 1


class SymbolCodecError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolPayload:
    count: int
    bits: np.ndarray

    @property
    def size(self) -> int:
        return int(self.bits.size)


def encode_symbols(triples: Sequence[Triple], dictionary: SymbolDictionary) -> SymbolPayload:
    if not triples:
        raise SymbolCodecError("cannot encode an empty triple list")
    if len(triples) > MAX_TRIPLES:
        raise SymbolCodecError(f"too many triples for one payload: {len(triples)} > {MAX_TRIPLES}")
    try:
        frames = [triple_frame(t, dictionary) for t in triples]
    except KeyError as exc:
        raise SymbolCodecError(str(exc)) from None
    bits = np.concatenate([int_to_bits(len(triples), COUNT_BITS), *frames])
    return SymbolPayload(count=len(triples), bits=bits)


def decode_frame(frame, dictionary: SymbolDictionary) -> Triple:
    bits = as_bit_array(frame)
    eb, rb = dictionary.entity_bits, dictionary.relation_bits
    if bits.size != dictionary.frame_bits:
        raise SymbolCodecError(f"frame is {bits.size} bits, expected {dictionary.frame_bits}")
    h = bits_to_int(bits[:eb])
    r = bits_to_int(bits[eb : eb + rb])
    t = bits_to_int(bits[eb + rb :])
    if h >= len(dictionary.entities) or t >= len(dictionary.entities):
        raise SymbolCodecError(f"entity id out of range: head={h} tail={t}")
    if r >= len(dictionary.relations):
        raise SymbolCodecError(f"relation id out of range: {r}")
    return Triple(dictionary.entities[h], dictionary.relations[r], dictionary.entities[t])


def decode_symbols(payload, dictionary: SymbolDictionary) -> tuple[Triple, ...]:
    bits = payload.bits if isinstance(payload, SymbolPayload) else as_bit_array(payload)
    if bits.size < COUNT_BITS:
        raise SymbolCodecError("payload shorter than the count prefix")
    count = bits_to_int(bits[:COUNT_BITS])
    body = bits[COUNT_BITS:]
    if body.size != count * dictionary.frame_bits:
        raise SymbolCodecError(
            f"payload length mismatch: prefix says {count} frames "
            f"({count * dictionary.frame_bits} bits), found {body.size}"
        )
    fb = dictionary.frame_bits
    return tuple(decode_frame(body[i * fb : (i + 1) * fb], dictionary) for i in range(count))
