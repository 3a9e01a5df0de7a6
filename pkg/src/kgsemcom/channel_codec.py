"""Channel layer: rate-1/2 convolutional code over a binary symmetric channel.

The code is the classic constraint-length-3 pair of generators 7 and 5
(octal), zero-flushed, free distance 5.  Decoding is hard-decision Viterbi
under the Hamming metric with ties resolved toward the 0 input bit, which
keeps decoding deterministic even on hopeless input.

Channel noise comes from a counter-based generator keyed by (seed,
stream_id), so any single transmission can be replayed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import as_bit_array

_MAX_UINT64 = (1 << 64) - 1


@dataclass(frozen=True)
class ConvCodeConfig:
    constraint_length: int = 3
    generators: tuple[int, ...] = (0o7, 0o5)

    @property
    def tail_bits(self) -> int:
        return self.constraint_length - 1

    def __post_init__(self):
        if self.constraint_length < 2:
            raise ValueError("constraint length must be at least 2")
        top = 1 << self.constraint_length
        if len(self.generators) < 2 or any(not 0 < g < top for g in self.generators):
            raise ValueError(f"generators must be non-zero and fit in {self.constraint_length} bits")


DEFAULT_CODE = ConvCodeConfig()


@dataclass(frozen=True)
class ChannelConfig:
    p: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"crossover probability must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= _MAX_UINT64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@lru_cache(maxsize=None)
def _trellis(cfg: ConvCodeConfig):
    """Per-state transition tables: packed output symbol and next state."""
    n_states = 1 << (cfg.constraint_length - 1)
    outputs = [[0, 0] for _ in range(n_states)]
    nxt = [[0, 0] for _ in range(n_states)]
    for state in range(n_states):
        for bit in (0, 1):
            reg = (bit << (cfg.constraint_length - 1)) | state
            symbol = 0
            for g in cfg.generators:
                symbol = (symbol << 1) | ((reg & g).bit_count() & 1)
            outputs[state][bit] = symbol
            nxt[state][bit] = reg >> 1
    return outputs, nxt


def conv_encode(bits, cfg: ConvCodeConfig = DEFAULT_CODE) -> np.ndarray:
    """Encode and zero-flush; output has 2 * (len(bits) + tail) coded bits."""
    arr = as_bit_array(bits)
    if arr.size == 0:
        raise ValueError("cannot encode an empty bit vector")
    outputs, nxt = _trellis(cfg)
    n_out = len(cfg.generators)
    coded = np.empty((arr.size + cfg.tail_bits) * n_out, dtype=np.uint8)
    state = 0
    pos = 0
    for b in list(arr) + [0] * cfg.tail_bits:
        symbol = outputs[state][b]
        state = nxt[state][b]
        for j in range(n_out - 1, -1, -1):
            coded[pos] = (symbol >> j) & 1
            pos += 1
    return coded


def viterbi_decode(coded, cfg: ConvCodeConfig = DEFAULT_CODE) -> np.ndarray:
    """Maximum-likelihood decode of a zero-flushed stream; tail bits stripped."""
    arr = as_bit_array(coded)
    n_out = len(cfg.generators)
    if arr.size == 0 or arr.size % n_out:
        raise ValueError(f"coded length must be a positive multiple of {n_out}")
    steps = arr.size // n_out
    if steps < cfg.constraint_length:
        raise ValueError(
            f"coded stream too short: {steps} symbols, need at least {cfg.constraint_length}"
        )
    outputs, nxt = _trellis(cfg)
    n_states = 1 << (cfg.constraint_length - 1)

    received = [0] * steps
    pos = 0
    for t in range(steps):
        r = 0
        for _ in range(n_out):
            r = (r << 1) | int(arr[pos])
            pos += 1
        received[t] = r

    # cost-to-go from each state to the forced all-zero end state; choosing
    # bit 0 on ties makes the decoder deterministic
    inf = 1 << 30
    cost = [inf] * n_states
    cost[0] = 0
    choice = [[0] * n_states for _ in range(steps)]
    for t in range(steps - 1, -1, -1):
        r = received[t]
        row = choice[t]
        new = [0] * n_states
        for s in range(n_states):
            c0 = ((outputs[s][0] ^ r).bit_count()) + cost[nxt[s][0]]
            c1 = ((outputs[s][1] ^ r).bit_count()) + cost[nxt[s][1]]
            if c0 <= c1:
                new[s] = c0
            else:
                new[s] = c1
                row[s] = 1
        cost = new

    decoded = np.empty(steps, dtype=np.uint8)
    state = 0
    for t in range(steps):
        b = choice[t][state]
        decoded[t] = b
        state = nxt[state][b]
    return decoded[: steps - cfg.tail_bits]


def bsc_transmit(bits, channel: ChannelConfig, stream_id: int) -> np.ndarray:
    """Flip each bit independently with probability p, reproducibly per stream."""
    arr = as_bit_array(bits)
    if not 0 <= stream_id <= _MAX_UINT64:
        raise ValueError("stream id must be an unsigned 64-bit integer")
    if arr.size == 0:
        return arr.copy()
    rng = np.random.Generator(np.random.Philox(key=np.array([channel.seed, stream_id], dtype=np.uint64)))
    flips = rng.random(arr.size) < channel.p
    return arr ^ flips.astype(np.uint8)
