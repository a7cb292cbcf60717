"""Heuristic coreference: pronouns and generic descriptors pointing back
to the first named organization in the document."""

from __future__ import annotations

from dataclasses import dataclass

from .entities import EntitySpan

# Nouns that can stand in for an organization ("The company ...").
_ORG_DESCRIPTORS = frozenset({
    "company", "firm", "corporation", "organization", "organisation",
    "group", "automaker", "manufacturer", "business",
})


@dataclass(frozen=True)
class Cluster:
    """Mentions of one referent; main indexes the representative one."""

    main: int
    mentions: tuple[tuple[int, int, int], ...]


def _after(span: EntitySpan, sent: int, start: int) -> bool:
    return (sent, start) >= (span.sent, span.end)


def build_clusters(sentences: list[list[str]],
                   entities: list[EntitySpan]) -> list[Cluster]:
    """At most one cluster: the first ORG plus later references to it.

    Sentence-initial "It" or "The <descriptor>" and the possessive
    "its" anywhere are read as references to that organization. The
    cluster is emitted only when at least one such reference exists.
    """
    anchor = next((e for e in entities if e.label == "ORG"), None)
    if anchor is None:
        return []
    mentions = [(anchor.sent, anchor.start, anchor.end)]
    for sent, words in enumerate(sentences):
        lows = [w.casefold() for w in words]
        if words and words[0] == "It" and _after(anchor, sent, 0):
            mentions.append((sent, 0, 1))
        elif len(words) >= 2 and lows[0] == "the" \
                and lows[1] in _ORG_DESCRIPTORS and _after(anchor, sent, 0):
            mentions.append((sent, 0, 2))
        for i, low in enumerate(lows):
            if low == "its" and _after(anchor, sent, i):
                mentions.append((sent, i, i + 1))
    if len(mentions) < 2:
        return []
    ordered = sorted(set(mentions))
    return [Cluster(main=ordered.index(mentions[0]),
                    mentions=tuple(ordered))]
