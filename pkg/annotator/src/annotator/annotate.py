"""Assemble tokens, entities, and coreference into annotation JSON.

The output dictionary matches the interchange format of the extraction
package: token character offsets with an inclusive end, entity and
mention token spans with an exclusive end, IOB marks consistent with
the entity list. validate_document re-checks all of that from scratch
so a rule bug fails loudly instead of producing a rejected file.
"""

from __future__ import annotations

import json

from .coref import build_clusters
from .entities import find_entities
from .postag import tag_sentence
from .tokenizer import tokenize


class AnnotationBuildError(ValueError):
    """An assembled document failed its own consistency checks."""


def annotate_text(text: str, doc_id: str = "doc") -> dict:
    """Annotate plain text into an interchange document dictionary."""
    raw_sentences = tokenize(text)
    words = [[t.text for t in sent] for sent in raw_sentences]
    tagged = [tag_sentence(sent) for sent in words]
    entities = find_entities(words)
    clusters = build_clusters(words, entities)

    marks = {}
    for span in entities:
        for k in range(span.start, span.end):
            marks[(span.sent, k)] = (span.label,
                                     "B" if k == span.start else "I")

    sentences = []
    for si, raw in enumerate(raw_sentences):
        tokens = []
        for i, tok in enumerate(raw):
            label, iob = marks.get((si, i), ("", "O"))
            pos, tag = tagged[si][i]
            tokens.append({
                "i": i,
                "text": tok.text,
                "ent_type": label,
                "iob": iob,
                "pos": pos,
                "tag": tag,
                "start": tok.start,
                "end": tok.end - 1,
                "dep": "dep",
                "head": 0,
            })
        sentences.append({"tokens": tokens})

    entity_rows = []
    for span in entities:
        first = raw_sentences[span.sent][span.start]
        last = raw_sentences[span.sent][span.end - 1]
        entity_rows.append({
            "text": text[first.start:last.end],
            "label": span.label,
            "sent": span.sent,
            "start": span.start,
            "end": span.end,
        })

    coref = [{"main": c.main,
              "mentions": [{"sent": s, "start": a, "end": b}
                           for s, a, b in c.mentions]}
             for c in clusters]

    return {
        "doc_id": doc_id,
        "text": text,
        "sentences": sentences,
        "entities": entity_rows,
        "coref": coref,
    }


def document_json(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise AnnotationBuildError(message)


def validate_document(doc: dict) -> None:
    """Raise AnnotationBuildError unless doc is internally consistent."""
    text = doc["text"]
    for sentence in doc["sentences"]:
        previous = None
        for idx, token in enumerate(sentence["tokens"]):
            _check(token["i"] == idx, "token index out of order")
            _check(text[token["start"]:token["end"] + 1] == token["text"],
                   f"offset mismatch for {token['text']!r}")
            _check(0 <= token["head"] < len(sentence["tokens"]),
                   "head out of range")
            if token["iob"] == "O":
                _check(token["ent_type"] == "", "typed token marked O")
            elif token["iob"] == "I":
                _check(previous is not None
                       and previous["iob"] in {"B", "I"}
                       and previous["ent_type"] == token["ent_type"],
                       "dangling I mark")
            else:
                _check(token["iob"] == "B" and token["ent_type"] != "",
                       "bad IOB mark")
            previous = token

    token_counts = [len(s["tokens"]) for s in doc["sentences"]]
    for entity in doc["entities"]:
        _check(0 <= entity["sent"] < len(token_counts), "entity sentence")
        _check(0 <= entity["start"] < entity["end"]
               <= token_counts[entity["sent"]], "entity span")
        tokens = doc["sentences"][entity["sent"]]["tokens"]
        piece = text[tokens[entity["start"]]["start"]:
                     tokens[entity["end"] - 1]["end"] + 1]
        _check(piece == entity["text"], "entity text mismatch")
        for k in range(entity["start"], entity["end"]):
            _check(tokens[k]["ent_type"] == entity["label"],
                   "entity label not marked on tokens")

    for cluster in doc["coref"]:
        _check(len(cluster["mentions"]) >= 2, "cluster too small")
        _check(0 <= cluster["main"] < len(cluster["mentions"]),
               "main index out of range")
        for mention in cluster["mentions"]:
            _check(0 <= mention["sent"] < len(token_counts),
                   "mention sentence")
            _check(0 <= mention["start"] < mention["end"]
                   <= token_counts[mention["sent"]], "mention span")
