"""Graph-side error correction: snap each received frame to the nearest codeword.

Whatever the channel decoder leaves behind, every frame is replaced by the
closest member of the shared codebook in Hamming distance (lowest index on
ties), so the receiver only ever sees triples the graph actually contains.
The count prefix has no codebook to lean on; if it was corrupted the payload
length no longer adds up and the whole message is a frame-sync failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import as_bit_array, bits_to_int
from .symbol_codec import COUNT_BITS


class FrameSyncError(ValueError):
    pass


@dataclass(frozen=True)
class Codebook:
    frames: np.ndarray

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.uint8)
        if frames.ndim != 2 or frames.shape[0] == 0:
            raise ValueError("codebook must be a non-empty 2-D bit matrix")
        if frames.size and not np.isin(frames, (0, 1)).all():
            raise ValueError("codebook frames may only contain 0 and 1")
        seen = {row.tobytes() for row in frames}
        if len(seen) != frames.shape[0]:
            raise ValueError("codebook frames must be pairwise distinct")
        object.__setattr__(self, "frames", frames)

    @property
    def frame_bits(self) -> int:
        return int(self.frames.shape[1])

    def __len__(self) -> int:
        return int(self.frames.shape[0])

    @classmethod
    def from_pairs(cls, pairs: Sequence) -> "Codebook":
        """Build from (triple, frame) pairs as produced by the graph store."""
        return cls(np.stack([frame for _, frame in pairs]))


def hamming(a, b) -> int:
    x = as_bit_array(a)
    y = as_bit_array(b)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return int((x != y).sum())


def correct_frame(observed, codebook: Codebook) -> tuple[np.ndarray, int, int]:
    """Nearest codeword, its index, and its distance to the observation."""
    obs = as_bit_array(observed)
    if obs.size != codebook.frame_bits:
        raise ValueError(f"frame is {obs.size} bits, codebook holds {codebook.frame_bits}-bit frames")
    distances = (codebook.frames != obs).sum(axis=1)
    index = int(np.argmin(distances))  # first minimum, so ties pick the lowest index
    return codebook.frames[index].copy(), index, int(distances[index])


def correct_payload(payload, codebook: Codebook) -> np.ndarray:
    """Pass the count prefix through, project every frame onto the codebook."""
    bits = as_bit_array(payload)
    if bits.size < COUNT_BITS:
        raise FrameSyncError(f"payload of {bits.size} bits cannot hold a count prefix")
    count = bits_to_int(bits[:COUNT_BITS])
    fb = codebook.frame_bits
    if bits.size != COUNT_BITS + count * fb:
        raise FrameSyncError(
            f"prefix claims {count} frames of {fb} bits but payload has "
            f"{bits.size - COUNT_BITS} bits after the prefix"
        )
    out = bits.copy()
    for i in range(count):
        lo = COUNT_BITS + i * fb
        out[lo : lo + fb] = correct_frame(bits[lo : lo + fb], codebook)[0]
    return out
