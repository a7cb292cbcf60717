"""Triple extraction: relation-segment mapping, locative graph expansion,
stop-word filtering, and article stripping."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace
from importlib import resources

from .chunker import ENTITY, VERB, Chunk, ChunkedDocument, chunk_document
from .coref import resolve_coreferences
from .ingest import AnnotatedDocument, normalize_pos

__all__ = [
    "Triple",
    "get_triples",
    "expand_graph",
    "filter_triples",
    "strip_articles",
    "extract_triples",
    "load_stopwords",
    "DAY_NAMES",
    "MONTH_NAMES",
    "STRIP_WORDS",
    "DEFAULT_PREPOSITIONS",
]

log = logging.getLogger(__name__)

DAY_NAMES = frozenset({
    "monday", "tuesday", "wednesday", "thursday", "friday",
    "saturday", "sunday",
})

MONTH_NAMES = frozenset({
    "january", "february", "march", "april", "may", "june", "july",
    "august", "september", "october", "november", "december",
})

# Leading tokens stripped from head and tail phrases: articles, possessive
# pronouns, and demonstratives.
STRIP_WORDS = frozenset({"a", "an", "the"}
                        | {"its", "their", "his", "her", "my", "our", "your"}
                        | {"this", "that", "these", "those"})

DEFAULT_PREPOSITIONS = ("in", "at", "on")


@dataclass(frozen=True)
class Triple:
    head: str
    relation: str
    tail: str
    sentence: int | None = None    # None marks graph-expansion triples


def load_stopwords(path=None) -> frozenset[str]:
    """Stop list: bundled (or overriding) word file plus day and month names.

    The file holds one lowercase entry per line.
    """
    if path is None:
        text = resources.files("kgx.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    words = {line.strip() for line in text.splitlines() if line.strip()}
    return frozenset(words) | DAY_NAMES | MONTH_NAMES


def _sentence_relations(chunks: list[Chunk]) -> list[int]:
    # Relations are verb chunks and bare adpositions; determiners,
    # conjunctions, punctuation and the rest are transparent.
    return [i for i, c in enumerate(chunks) if c.kind in (VERB, "ADP")]


def _entities_between(chunks: list[Chunk], lo: int, hi: int) -> list[Chunk]:
    return [c for c in chunks[lo + 1:hi] if c.kind == ENTITY]


def get_triples(cd: ChunkedDocument, literal_leftright: bool = False) -> list[Triple]:
    """Map each sentence's chunks to (head, relation, tail) triples.

    For every relation chunk, heads are the ENTITY chunks between the
    previous relation (or sentence start) and it, tails the ENTITY chunks
    between it and the next relation (or sentence end); one triple per
    head x tail pair. With literal_leftright=True, heads and tails instead
    come from everything left and right of the relation in the sentence.
    """
    triples: list[Triple] = []
    seen: set[tuple[str, str, str]] = set()
    for sentence in cd.doc.sentences:
        chunks = list(cd.sentence_chunks(sentence.index))
        relations = _sentence_relations(chunks)
        for pos, r in enumerate(relations):
            if literal_leftright:
                lo, hi = -1, len(chunks)
            else:
                lo = relations[pos - 1] if pos > 0 else -1
                hi = relations[pos + 1] if pos + 1 < len(relations) else len(chunks)
            relation = chunks[r].text.strip()
            for head in _entities_between(chunks, lo, r):
                for tail in _entities_between(chunks, r, hi):
                    h, t = head.text.strip(), tail.text.strip()
                    if not h or not t or not relation or h == t:
                        continue
                    key = (h, relation, t)
                    if key in seen:
                        continue
                    seen.add(key)
                    triples.append(Triple(h, relation, t, sentence=sentence.index))
    return triples


def _whole_word_pattern(prepositions) -> re.Pattern:
    alternatives = "|".join(re.escape(p) for p in prepositions)
    return re.compile(rf"\b(?:{alternatives})\b")


def expand_graph(triples: list[Triple],
                 prepositions=DEFAULT_PREPOSITIONS) -> list[Triple]:
    """Add (h, "in", t) for node pairs linked only through a locative path.

    Over the directed multigraph of the input triples: for every ordered
    pair of distinct nodes with no direct h -> t edge, if some shortest
    directed path from h to t ends in an edge whose relation contains one
    of the prepositions as a whole word, an (h, "in", t) triple is added.
    Input order is preserved; additions append in (head, tail) order.
    """
    pattern = _whole_word_pattern(prepositions)
    nodes: list[str] = []
    seen_nodes: set[str] = set()
    out_edges: dict[str, set[str]] = {}
    in_edges: dict[str, list[tuple[str, str]]] = {}
    for triple in triples:
        for node in (triple.head, triple.tail):
            if node not in seen_nodes:
                seen_nodes.add(node)
                nodes.append(node)
                out_edges[node] = set()
                in_edges[node] = []
        out_edges[triple.head].add(triple.tail)
        in_edges[triple.tail].append((triple.head, triple.relation))

    def distances(source: str) -> dict[str, int]:
        dist = {source: 0}
        frontier = [source]
        while frontier:
            next_frontier = []
            for v in frontier:
                for w in out_edges[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        next_frontier.append(w)
            frontier = next_frontier
        return dist

    additions: list[Triple] = []
    for h in nodes:
        dist = distances(h)
        for t in nodes:
            if t == h or t in out_edges[h]:
                continue
            d = dist.get(t)
            if d is None:
                continue
            # qualifying final edge: predecessor on some shortest path
            if any(dist.get(p) == d - 1 and pattern.search(rel.casefold())
                   for p, rel in in_edges[t]):
                additions.append(Triple(h, "in", t, sentence=None))
    additions.sort(key=lambda tr: (tr.head, tr.tail))
    return triples + additions


def filter_triples(triples: list[Triple],
                   stopwords: frozenset[str] | None = None) -> list[Triple]:
    """Drop triples whose whole head is a stop word, day name, or month name.

    Matching is case-folded exact phrase equality, heads only.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    return [t for t in triples if t.head.strip().casefold() not in stopwords]


def _strip_leading(phrase: str) -> str:
    s = phrase
    while s:
        first, _, rest = s.partition(" ")
        if first.casefold() not in STRIP_WORDS:
            break
        s = rest.lstrip(" ")
    return s


def strip_articles(triples: list[Triple]) -> list[Triple]:
    """Strip leading articles/possessives/demonstratives from heads and tails.

    Triples emptied or collapsed (head == tail) by stripping are degenerate:
    dropped and counted, never fatal. Duplicates created by stripping keep
    their first occurrence. Idempotent.
    """
    out: list[Triple] = []
    seen: set[tuple[str, str, str]] = set()
    degenerate = 0
    for triple in triples:
        head = _strip_leading(triple.head.strip())
        tail = _strip_leading(triple.tail.strip())
        if not head or not tail or head == tail:
            degenerate += 1
            continue
        key = (head, triple.relation, tail)
        if key in seen:
            continue
        seen.add(key)
        if head != triple.head or tail != triple.tail:
            triple = replace(triple, head=head, tail=tail)
        out.append(triple)
    if degenerate:
        log.info("dropped %d degenerate triple(s) during article stripping",
                 degenerate)
    return out


def extract_triples(doc: AnnotatedDocument, config=None) -> list[Triple]:
    """Full pipeline: chunk, resolve coref, map, expand, filter, strip."""
    from .config import PipelineConfig
    cfg = config if config is not None else PipelineConfig()
    chunked = chunk_document(normalize_pos(doc),
                             adv_in_verb_chunks=cfg.adv_in_verb_chunks)
    chunked = resolve_coreferences(chunked)
    triples = get_triples(chunked, literal_leftright=cfg.literal_leftright_mapping)
    triples = expand_graph(triples, prepositions=cfg.expansion_prepositions)
    triples = filter_triples(triples, stopwords=load_stopwords(cfg.stopwords_path))
    return strip_articles(triples)
