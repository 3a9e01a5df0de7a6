"""Character-level baseline source codecs: fixed 7-bit and canonical Huffman.

The Huffman table is built from character frequencies of a corpus's reference
texts.  Tree merging breaks frequency ties by character code point (leaves
first), then by subtree creation order, and the final codes are canonical, so
identical frequencies always produce identical tables.  An optional escape
symbol (stored as code point -1) lets a table built on one split encode
characters it never saw: escape code followed by the raw 7-bit character.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .bits import as_bit_array, bits_to_int, int_to_bits

if TYPE_CHECKING:
    from .corpus import Corpus

ESCAPE = -1
_RAW_BITS = 7


class CodecError(ValueError):
    pass


class HuffmanTruncationError(CodecError):
    """Bits ran out in the middle of a codeword; carries the text decoded so far."""

    def __init__(self, message: str, partial: str):
        super().__init__(message)
        self.partial = partial


def fixed7_encode(text: str) -> np.ndarray:
    if not text:
        raise CodecError("cannot encode empty text")
    if not text.isascii():
        bad = next(c for c in text if ord(c) >= 128)
        raise CodecError(f"character {bad!r} (U+{ord(bad):04X}) does not fit in 7 bits")
    points = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    out = np.zeros((points.size, _RAW_BITS), dtype=np.uint8)
    for j in range(_RAW_BITS):
        out[:, j] = (points >> (_RAW_BITS - 1 - j)) & 1
    return out.reshape(-1)


def fixed7_decode(bits) -> str:
    arr = as_bit_array(bits)
    if arr.size == 0 or arr.size % _RAW_BITS:
        raise CodecError(f"bit length {arr.size} is not a positive multiple of {_RAW_BITS}")
    weights = 1 << np.arange(_RAW_BITS - 1, -1, -1)
    points = arr.reshape(-1, _RAW_BITS) @ weights
    return "".join(map(chr, points))


@dataclass
class HuffmanTable:
    """Canonical prefix codes keyed by character code point (ESCAPE = -1)."""

    codes: dict[int, str]
    _decode: dict[str, int] = field(init=False, repr=False)
    _max_len: int = field(init=False, repr=False)

    def __post_init__(self):
        if not self.codes:
            raise CodecError("empty code table")
        if any(not code or set(code) - {"0", "1"} for code in self.codes.values()):
            raise CodecError("codes must be non-empty strings of 0s and 1s")
        self._decode = {code: sym for sym, code in self.codes.items()}
        if len(self._decode) != len(self.codes):
            raise CodecError("duplicate codes in table")
        ordered = sorted(self.codes.values())
        for a, b in zip(ordered, ordered[1:]):
            if b.startswith(a):
                raise CodecError(f"code {a!r} is a prefix of {b!r}")
        self._max_len = max(len(c) for c in self.codes.values())

    @property
    def has_escape(self) -> bool:
        return ESCAPE in self.codes

    def kraft_sum(self) -> float:
        return sum(2.0 ** -len(code) for code in self.codes.values())

    def mean_code_length(self, frequencies: Counter) -> float:
        total = sum(frequencies.values())
        return sum(len(self.codes[ord(ch)]) * n for ch, n in frequencies.items()) / total


def _code_lengths(frequencies: dict[int, int]) -> dict[int, int]:
    if len(frequencies) == 1:
        return {sym: 1 for sym in frequencies}
    # heap entries: (freq, kind, tiebreak) with leaves (kind 0, by code point)
    # winning ties over merged subtrees (kind 1, by creation order)
    heap = [(freq, 0, sym, [sym]) for sym, freq in frequencies.items()]
    heapq.heapify(heap)
    lengths = {sym: 0 for sym in frequencies}
    created = 0
    while len(heap) > 1:
        fa, _, _, syms_a = heapq.heappop(heap)
        fb, _, _, syms_b = heapq.heappop(heap)
        for sym in syms_a + syms_b:
            lengths[sym] += 1
        heapq.heappush(heap, (fa + fb, 1, created, syms_a + syms_b))
        created += 1
    return lengths


def _canonical_codes(lengths: dict[int, int]) -> dict[int, str]:
    ordered = sorted(lengths.items(), key=lambda kv: (kv[1], kv[0]))
    codes = {}
    code = 0
    prev_len = ordered[0][1]
    for sym, length in ordered:
        code <<= length - prev_len
        codes[sym] = format(code, f"0{length}b")
        code += 1
        prev_len = length
    return codes


def huffman_build(corpus: "Corpus", include_escape: bool = False) -> HuffmanTable:
    """Build the canonical table from all reference-text characters in the corpus."""
    frequencies: Counter = Counter()
    for text in corpus.texts():
        frequencies.update(text)
    if not frequencies:
        raise CodecError("corpus has no text to build frequencies from")
    table = {ord(ch): n for ch, n in frequencies.items()}
    if include_escape:
        table[ESCAPE] = 0
    return HuffmanTable(_canonical_codes(_code_lengths(table)))


def huffman_encode(text: str, table: HuffmanTable) -> np.ndarray:
    if not text:
        raise CodecError("cannot encode empty text")
    pieces = []
    escape = table.codes.get(ESCAPE)
    for i, ch in enumerate(text):
        code = table.codes.get(ord(ch))
        if code is not None:
            pieces.append(code)
        elif escape is not None and ord(ch) < 128:
            pieces.append(escape + format(ord(ch), f"0{_RAW_BITS}b"))
        else:
            raise CodecError(f"character {ch!r} at position {i} is not encodable with this table")
    return as_bit_array("".join(pieces))


def huffman_decode(bits, table: HuffmanTable) -> str:
    arr = as_bit_array(bits)
    out: list[str] = []
    decode = table._decode
    i, n = 0, arr.size
    while i < n:
        prefix = ""
        symbol = None
        while i < n:
            prefix += "01"[arr[i]]
            i += 1
            symbol = decode.get(prefix)
            if symbol is not None:
                break
            if len(prefix) > table._max_len:
                raise CodecError(f"bit sequence {prefix!r} matches no codeword")
        if symbol is None:
            raise HuffmanTruncationError(
                f"bits ended inside a codeword after {len(out)} characters", "".join(out)
            )
        if symbol == ESCAPE:
            if i + _RAW_BITS > n:
                raise HuffmanTruncationError(
                    f"bits ended inside an escaped character after {len(out)} characters",
                    "".join(out),
                )
            out.append(chr(bits_to_int(arr[i : i + _RAW_BITS])))
            i += _RAW_BITS
        else:
            out.append(chr(symbol))
    return "".join(out)


def save_huffman(table: HuffmanTable, path) -> None:
    lines = ["codepoint\tcode"]
    lines += [f"{sym}\t{table.codes[sym]}" for sym in sorted(table.codes)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_huffman(path) -> HuffmanTable:
    codes: dict[int, str] = {}
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[1] or set(parts[1]) - {"0", "1"}:
            raise CodecError(f"{path}: line {lineno}: expected 'codepoint<TAB>binary code'")
        sym = int(parts[0])
        if sym in codes:
            raise CodecError(f"{path}: line {lineno}: duplicate code point {sym}")
        codes[sym] = parts[1]
    return HuffmanTable(codes)
