"""Bit-vector helpers shared by the codecs.

Bit vectors are 1-D numpy uint8 arrays holding 0/1, most significant bit
first wherever an integer is involved.
"""

from __future__ import annotations

import numpy as np


def as_bit_array(bits) -> np.ndarray:
    """Coerce a "0101" string, an iterable, or an array to a uint8 bit array."""
    if isinstance(bits, str):
        if not set(bits) <= {"0", "1"}:
            raise ValueError(f"bit string may only contain 0 and 1: {bits!r}")
        return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("bit vector may only contain 0 and 1")
    return arr.astype(np.uint8)


def int_to_bits(value: int, width: int) -> np.ndarray:
    if width <= 0:
        raise ValueError("width must be positive")
    if not 0 <= value < (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits) -> int:
    out = 0
    for b in as_bit_array(bits):
        out = (out << 1) | int(b)
    return out


def bits_to_str(bits) -> str:
    return "".join("01"[b] for b in as_bit_array(bits))
