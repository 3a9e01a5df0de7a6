"""Turn received triples back into text.

Two routes: a deterministic template ("The {relation} of {head} is {tail}.")
and an external adapter process fed the concatenated-triple form.  The
concatenation groups triples by head so the adapter sees one clause list per
subject.
"""

from __future__ import annotations

from typing import Sequence

from .adapter_client import AdapterClient, AdapterRequestError
from .kg_store import Triple

REALIZER_KINDS = ("template", "adapter")


def concat_input(triples: Sequence[Triple]) -> str:
    """"head rel tail, rel tail" per head group, groups joined by "; "."""
    if not triples:
        raise ValueError("cannot build realizer input from zero triples")
    groups: dict[str, list[Triple]] = {}
    for t in triples:
        groups.setdefault(t.head, []).append(t)
    parts = []
    for head, members in groups.items():
        clauses = [f"{head} {members[0].relation} {members[0].tail}"]
        clauses += [f"{t.relation} {t.tail}" for t in members[1:]]
        parts.append(", ".join(clauses))
    return "; ".join(parts)


def realize_template(triples: Sequence[Triple]) -> str:
    if not triples:
        raise ValueError("cannot realize zero triples")
    sentences = []
    for t in triples:
        s = f"The {t.relation} of {t.head} is {t.tail}."
        sentences.append(s[0].upper() + s[1:])
    return " ".join(sentences)


def realize(triples: Sequence[Triple], kind: str = "template", adapter: AdapterClient | None = None) -> str:
    if kind == "template":
        return realize_template(triples)
    if kind == "adapter":
        if adapter is None:
            raise AdapterRequestError("adapter realization requested but no adapter client given")
        text = adapter.realize(concat_input(triples))
        if not text.strip():
            raise AdapterRequestError("adapter returned an empty realization")
        return text
    raise ValueError(f"unknown realizer kind {kind!r}; expected one of {REALIZER_KINDS}")
