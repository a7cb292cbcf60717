"""Coreference substitution: rewrite ENTITY chunk texts to each cluster's
representative mention."""

from __future__ import annotations

import logging
from dataclasses import replace

from .chunker import ENTITY, ChunkedDocument
from .ingest import span_text

__all__ = ["POSSESSIVE_PRONOUNS", "resolve_coreferences"]

log = logging.getLogger(__name__)

# Possessive mentions are never substituted: "main headquarters" reads
# better than "Ford Motor Company main headquarters".
POSSESSIVE_PRONOUNS = frozenset({"its", "his", "her", "their", "my", "our", "your"})


def resolve_coreferences(cd: ChunkedDocument) -> ChunkedDocument:
    """Replace chunk texts of coref mentions with their cluster's main text.

    A mention rewrites the ENTITY chunk that starts at its first token;
    mentions lodged elsewhere (mid-chunk, or inside VERB or pass-through
    chunks) are left alone. Spans, kinds, order, and chunk count never
    change. Idempotent: decisions key off the original document text, not
    off already-rewritten chunk texts.
    """
    doc = cd.doc
    if not doc.coref:
        return cd
    chunks = list(cd.chunks)
    # (sentence, first token) -> chunk position, for mention lookup
    by_start = {(c.sent, c.start): i for i, c in enumerate(chunks)}
    for cluster in doc.coref:
        main = cluster.mentions[cluster.main]
        representative = span_text(doc, main.sent, main.start, main.end)
        for mi, mention in enumerate(cluster.mentions):
            if mi == cluster.main:
                continue
            mention_text = span_text(doc, mention.sent, mention.start, mention.end)
            if mention_text.casefold() in POSSESSIVE_PRONOUNS:
                continue
            pos = by_start.get((mention.sent, mention.start))
            if pos is None or chunks[pos].kind != ENTITY:
                continue
            if chunks[pos].text != representative:
                log.debug("coref: %r -> %r", chunks[pos].text, representative)
                chunks[pos] = replace(chunks[pos], text=representative)
    return replace(cd, chunks=tuple(chunks))
