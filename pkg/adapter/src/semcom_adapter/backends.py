"""Realizer and embedder backends.

Both shipped backends are model-free and fully deterministic, so the worker
can run anywhere and two sessions always agree.  A model-backed variant
(seq2seq realizer, encoder embedder) plugs in by providing the same two
methods and registering a constructor in worker.BACKENDS; greedy decoding
and eval mode keep the protocol's determinism contract intact.
"""

import hashlib
import re

import numpy as np

_TOKEN = re.compile(r"\w+")


class CopyRealizer:
    """Copy-baseline surface realizer.

    The realize payload is a triple concatenation: clauses grouped by head,
    ", " between relation-tail pairs of one head, "; " between heads
    ("Aarhus leader Jacob Bundsgaard, country Denmark; Batchoy ingredient
    Chicken").  With no model to invert that into fluent prose, this backend
    lifts each head group into one sentence verbatim, which keeps every
    entity and relation word present in the output.
    """

    def realize(self, payload: str) -> str:
        groups = [g.strip() for g in payload.split(";") if g.strip()]
        if not groups:
            raise ValueError("realize payload is empty")
        sentences = []
        for group in groups:
            body = " and ".join(part.strip() for part in group.split(",") if part.strip())
            sentences.append(body[0].upper() + body[1:] + ".")
        return " ".join(sentences)


class HashEmbedder:
    """Feature-hashing bag-of-words embedder.

    Each token lands in a bucket chosen by its blake2b digest, with a
    digest-derived sign, and the result is L2-normalized.  Not a semantic
    model, but stable across processes and platforms, shares no state with
    the primary's lexical embedder, and gives unrelated texts near-orthogonal
    vectors once enough buckets are used.
    """

    def __init__(self, dim: int = 256):
        if dim < 2:
            raise ValueError("embedding dimension must be at least 2")
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        tokens = _TOKEN.findall(text.lower()) or [text.strip().lower()]
        if tokens == [""]:
            raise ValueError("embed payload is blank")
        vec = np.zeros(self.dim, dtype=np.float64)
        for token in tokens:
            digest = hashlib.blake2b(token.encode("utf-8"), digest_size=9).digest()
            bucket = int.from_bytes(digest[:8], "big") % self.dim
            sign = 1.0 if digest[8] & 1 else -1.0
            vec[bucket] += sign
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            # opposite-signed collisions cancelled everything; fall back to
            # a one-hot on the whole text so the vector stays usable
            digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
            vec[int.from_bytes(digest, "big") % self.dim] = 1.0
            norm = 1.0
        return vec / norm
