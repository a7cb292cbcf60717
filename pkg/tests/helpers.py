"""Shared test utilities: fixture paths, golden tables, and builders for
synthetic annotated documents."""

from __future__ import annotations

import random
from pathlib import Path

from kgx.ingest import (
    AnnotatedDocument,
    CorefCluster,
    EntityMention,
    MentionSpan,
    Sentence,
    Token,
)

DATA_DIR = Path(__file__).parent / "data"
FIXTURE = DATA_DIR / "ford.ann.json"
FIXTURE_EVAL = DATA_DIR / "ford_eval.ann.json"
CHUNK_ORACLE = DATA_DIR / "chunk_oracle.tsv"

# Hand-evaluated chunk sequence for the committed fixture, in order.
GOLDEN_CHUNKS = (
    ("Ford Motor Company", "ENTITY"),
    ("is", "VERB"),
    ("an American multinational automaker", "ENTITY"),
    ("that", "DET"),
    ("has", "VERB"),
    ("its main headquarters", "ENTITY"),
    ("in", "ADP"),
    ("Dearborn", "ENTITY"),
    (",", "PUNCT"),
    ("Michigan", "ENTITY"),
    (",", "PUNCT"),
    ("a suburb of Detroit", "ENTITY"),
    (".", "PUNCT"),
    ("The company", "ENTITY"),
    ("was founded by", "VERB"),
    ("Henry Ford", "ENTITY"),
    ("and", "CCONJ"),
    ("incorporated on", "VERB"),
    ("June 16, 1903", "ENTITY"),
    (".", "PUNCT"),
)

# Full expected pipeline output, in order: the seven sentence-mapped rows,
# then the seven expansion rows sorted by (head, tail).
GOLDEN_TRIPLES_ORDERED = (
    ("Ford Motor Company", "is", "American multinational automaker", 0),
    ("American multinational automaker", "has", "main headquarters", 0),
    ("main headquarters", "in", "Dearborn", 0),
    ("main headquarters", "in", "Michigan", 0),
    ("main headquarters", "in", "suburb of Detroit", 0),
    ("Ford Motor Company", "was founded by", "Henry Ford", 1),
    ("Henry Ford", "incorporated on", "June 16, 1903", 1),
    ("Ford Motor Company", "in", "Dearborn", None),
    ("Ford Motor Company", "in", "June 16, 1903", None),
    ("Ford Motor Company", "in", "Michigan", None),
    ("Ford Motor Company", "in", "suburb of Detroit", None),
    ("American multinational automaker", "in", "Dearborn", None),
    ("American multinational automaker", "in", "Michigan", None),
    ("American multinational automaker", "in", "suburb of Detroit", None),
)

GOLDEN_TRIPLES = frozenset((h, r, t) for h, r, t, _ in GOLDEN_TRIPLES_ORDERED)

GOLDEN_DEGREE = {
    "Ford Motor Company": 6,
    "American multinational automaker": 5,
    "main headquarters": 4,
    "Dearborn": 3,
    "Michigan": 3,
    "suburb of Detroit": 3,
    "Henry Ford": 2,
    "June 16, 1903": 2,
}

GOLDEN_BETWEENNESS = {
    "Ford Motor Company": 11.0,
    "American multinational automaker": 1.75,
    "main headquarters": 1.0,
    "Dearborn": 0.75,
    "Michigan": 0.75,
    "suburb of Detroit": 0.75,
    "Henry Ford": 0.0,
    "June 16, 1903": 0.0,
}

GOLDEN_TYPES = {
    "Ford Motor Company": "ORG",
    "American multinational automaker": "O",
    "main headquarters": "O",
    "Dearborn": "LOC",
    "Michigan": "LOC",
    "suburb of Detroit": "O",
    "Henry Ford": "PER",
    "June 16, 1903": "O",
}

# Tokens that attach to the preceding word without a space.
ATTACH_LEFT = frozenset({",", ".", "!", "?", ";", ":", ")", "%", "'s", "n't"})

_DEFAULT_TAGS = {
    "NOUN": "NN", "PROPN": "NNP", "VERB": "VBD", "AUX": "VBD",
    "ADP": "IN", "DET": "DT", "ADJ": "JJ", "ADV": "RB", "PRON": "PRP",
    "PART": "RP", "NUM": "CD", "PUNCT": ".", "CCONJ": "CC", "SCONJ": "IN",
    "INTJ": "UH", "SYM": "SYM", "X": "XX",
}


def make_doc(sentences, doc_id="doc", entities=(), coref=()):
    """Build a valid AnnotatedDocument from compact token specs.

    Each sentence is a list of token specs: (text, pos) or (text, pos, tag).
    entities holds (label, sent, start, end) spans whose tokens get B/I
    marks; coref holds (main, [(sent, start, end), ...]) clusters.
    """
    specs = []
    for spec in sentences:
        rows = []
        for item in spec:
            text, pos = item[0], item[1]
            tag = item[2] if len(item) > 2 else _DEFAULT_TAGS.get(pos, pos)
            rows.append({"text": text, "pos": pos, "tag": tag,
                         "ent_type": "", "iob": "O"})
        specs.append(rows)
    for label, sent, start, end in entities:
        for k in range(start, end):
            specs[sent][k]["ent_type"] = label
            specs[sent][k]["iob"] = "B" if k == start else "I"

    text = ""
    built = []
    for si, rows in enumerate(specs):
        tokens = []
        for i, row in enumerate(rows):
            if text and row["text"] not in ATTACH_LEFT and not text.endswith("("):
                text += " "
            start = len(text)
            text += row["text"]
            tokens.append(Token(i=i, text=row["text"], ent_type=row["ent_type"],
                                iob=row["iob"], pos=row["pos"], tag=row["tag"],
                                start=start, end=len(text) - 1, dep="dep",
                                head=0))
        built.append(Sentence(index=si, tokens=tuple(tokens)))

    sent_objs = tuple(built)
    ents = []
    for label, sent, start, end in entities:
        toks = sent_objs[sent].tokens
        covered = text[toks[start].start:toks[end - 1].end + 1]
        ents.append(EntityMention(text=covered, label=label, sent=sent,
                                  start=start, end=end))
    clusters = tuple(
        CorefCluster(main=main,
                     mentions=tuple(MentionSpan(sent=s, start=a, end=b)
                                    for s, a, b in mentions))
        for main, mentions in coref)
    return AnnotatedDocument(doc_id=doc_id, text=text, sentences=sent_objs,
                             entities=tuple(ents), coref=clusters)


# Weighted toward the word classes the grammar actually consumes.
_POS_POOL = ("NOUN", "NOUN", "NOUN", "PROPN", "PROPN", "VERB", "VERB",
             "ADP", "ADP", "DET", "DET", "ADJ", "ADJ", "ADV", "PRON",
             "PART", "NUM", "PUNCT", "PUNCT", "CCONJ", "SCONJ", "AUX",
             "INTJ", "SYM", "X")

_WORDS = {
    "NOUN": ("cat", "house", "cards", "suburb", "engine"),
    "PROPN": ("Ford", "Detroit", "Alice", "Bob"),
    "VERB": ("ran", "made", "was", "founded", "sat"),
    "ADP": ("of", "in", "on", "near", "with"),
    "DET": ("the", "a", "an", "this"),
    "ADJ": ("red", "old", "big"),
    "ADV": ("quickly", "very"),
    "PRON": ("it", "she", "they"),
    "PART": ("to", "not"),
    "NUM": ("5", "42", "1903"),
    "PUNCT": (",", ".", "(", ")"),
    "CCONJ": ("and", "or"),
    "SCONJ": ("that", "because"),
    "AUX": ("was", "is"),
    "INTJ": ("oh",),
    "SYM": ("%",),
    "X": ("etc",),
}

_SPAN_LABELS = ("PERSON", "ORG", "GPE", "DATE", "NORP", "LOC")


def random_tagged_doc(rng: random.Random) -> AnnotatedDocument:
    """One random sentence, optionally with one or two entity spans."""
    n = rng.randint(1, 12)
    spec = []
    for _ in range(n):
        pos = rng.choice(_POS_POOL)
        spec.append((rng.choice(_WORDS[pos]), pos))
    entities = []
    if n >= 2 and rng.random() < 0.5:
        a = rng.randrange(n - 1)
        b = min(n, a + rng.randint(1, 3))
        entities.append((rng.choice(_SPAN_LABELS), 0, a, b))
        if rng.random() < 0.3:
            c = rng.randrange(n)
            d = min(n, c + rng.randint(1, 2))
            entities.append((rng.choice(_SPAN_LABELS), 0, c, d))
    return make_doc([spec], entities=entities)
