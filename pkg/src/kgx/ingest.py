"""Annotation interchange format: parsing, validation, and text cleaning.

A document arrives as JSON produced by an external annotator (see README
for the schema). Everything downstream works on the immutable
AnnotatedDocument built here, so validation happens once, up front.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
import re

__all__ = [
    "AnnotationError",
    "SchemaError",
    "SpanError",
    "IobError",
    "Token",
    "Sentence",
    "EntityMention",
    "MentionSpan",
    "CorefCluster",
    "AnnotatedDocument",
    "clean_text",
    "parse_annotation",
    "load_annotation",
    "serialize_annotation",
    "normalize_pos",
    "span_text",
]


class AnnotationError(ValueError):
    """Base class for annotation-file problems."""


class SchemaError(AnnotationError):
    """Missing, unknown, or ill-typed field; message names the path."""


class SpanError(AnnotationError):
    """Character offset or token span out of range."""


class IobError(AnnotationError):
    """Inconsistent IOB entity tagging (e.g. a dangling I tag)."""


# ---------------------------------------------------------------------------
# text cleaning
# ---------------------------------------------------------------------------

# Typographic quotes and apostrophes to their ASCII forms, en/em dashes and
# non-breaking hyphens to plain "-".
_CHAR_FIXES = str.maketrans({
    "“": '"',   # left double quote
    "”": '"',   # right double quote
    "„": '"',   # low double quote
    "‘": "'",   # left single quote
    "’": "'",   # right single quote
    "‚": "'",   # low single quote
    "–": "-",   # en dash
    "—": "-",   # em dash
    "‑": "-",   # non-breaking hyphen
})

# Sentences glued together: "them.The" -> "them. The". An uppercase letter
# before the period (initialisms like "U.S.A.") must not trigger the split.
_GLUED_STOP = re.compile(r"(?<=[a-z])\.(?=[A-Z])")

# Runs of spaces and tabs collapse to one space; newlines stay untouched.
_SPACE_RUN = re.compile(r"[ \t]+")


def clean_text(raw: str) -> str:
    """Normalize quotes, dashes, glued sentence breaks, and space runs.

    Total and idempotent: cleaning already-clean text changes nothing.
    """
    out = raw.translate(_CHAR_FIXES)
    out = _GLUED_STOP.sub(". ", out)
    return _SPACE_RUN.sub(" ", out)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    i: int            # position within the sentence
    text: str
    ent_type: str     # entity label, empty when iob is O
    iob: str          # B | I | O
    pos: str          # coarse POS (universal tagset)
    tag: str          # fine POS
    start: int        # char offset into document text
    end: int          # char offset, INCLUSIVE
    dep: str          # dependency label
    head: int         # sentence-local index of the dependency head


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class EntityMention:
    text: str
    label: str
    sent: int
    start: int        # token index, inclusive
    end: int          # token index, EXCLUSIVE


@dataclass(frozen=True)
class MentionSpan:
    sent: int
    start: int
    end: int          # token index, EXCLUSIVE


@dataclass(frozen=True)
class CorefCluster:
    main: int                          # index into mentions
    mentions: tuple[MentionSpan, ...]


@dataclass(frozen=True)
class AnnotatedDocument:
    doc_id: str
    text: str
    sentences: tuple[Sentence, ...]
    entities: tuple[EntityMention, ...]
    coref: tuple[CorefCluster, ...]


def span_text(doc: AnnotatedDocument, sent: int, start: int, end: int) -> str:
    """Document text covered by tokens [start, end) of a sentence.

    Slicing the document text keeps the original inter-token spacing.
    """
    tokens = doc.sentences[sent].tokens
    return doc.text[tokens[start].start:tokens[end - 1].end + 1]


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------

_TOKEN_KEYS = ("i", "text", "ent_type", "iob", "pos", "tag",
               "start", "end", "dep", "head")


def _check_keys(obj: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}: unknown key {key!r}")
    for key in allowed:
        if key not in obj:
            raise SchemaError(f"{path}: missing key {key!r}")


def _get_str(obj: dict, key: str, path: str) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{path}.{key}: expected string, got {type(value).__name__}")
    return value


def _get_int(obj: dict, key: str, path: str) -> int:
    value = obj[key]
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}.{key}: expected integer, got {type(value).__name__}")
    return value


def _get_list(obj: dict, key: str, path: str) -> list:
    value = obj[key]
    if not isinstance(value, list):
        raise SchemaError(f"{path}.{key}: expected array, got {type(value).__name__}")
    return value


def _parse_token(obj: object, si: int, ti: int, text_len: int) -> Token:
    path = f"sentences[{si}].tokens[{ti}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected object")
    _check_keys(obj, _TOKEN_KEYS, path)
    token = Token(
        i=_get_int(obj, "i", path),
        text=_get_str(obj, "text", path),
        ent_type=_get_str(obj, "ent_type", path),
        iob=_get_str(obj, "iob", path),
        pos=_get_str(obj, "pos", path),
        tag=_get_str(obj, "tag", path),
        start=_get_int(obj, "start", path),
        end=_get_int(obj, "end", path),
        dep=_get_str(obj, "dep", path),
        head=_get_int(obj, "head", path),
    )
    if token.iob not in ("B", "I", "O"):
        raise SchemaError(f"{path}.iob: expected B, I, or O, got {token.iob!r}")
    if token.i != ti:
        raise SchemaError(f"{path}.i: expected {ti}, got {token.i}")
    if token.start < 0 or token.end < token.start:
        raise SpanError(f"{path}: bad char span {token.start}..{token.end}")
    if token.end >= text_len:
        raise SpanError(f"{path}: char span {token.start}..{token.end} "
                        f"outside text of length {text_len}")
    return token


def _check_iob(tokens: tuple[Token, ...], si: int) -> None:
    prev: Token | None = None
    for token in tokens:
        path = f"sentences[{si}].tokens[{token.i}]"
        if token.iob == "O":
            if token.ent_type:
                raise IobError(f"{path}: iob O with ent_type {token.ent_type!r}")
        else:
            if not token.ent_type:
                raise IobError(f"{path}: iob {token.iob} with empty ent_type")
            if token.iob == "I":
                if prev is None or prev.iob == "O":
                    raise IobError(f"{path}: dangling I tag")
                if prev.ent_type != token.ent_type:
                    raise IobError(f"{path}: I tag continues {prev.ent_type!r} "
                                   f"with ent_type {token.ent_type!r}")
        prev = token


def _parse_sentence(obj: object, si: int, text_len: int) -> Sentence:
    path = f"sentences[{si}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected object")
    _check_keys(obj, ("tokens",), path)
    raw_tokens = _get_list(obj, "tokens", path)
    if not raw_tokens:
        raise SchemaError(f"{path}.tokens: sentence has no tokens")
    tokens = tuple(_parse_token(t, si, ti, text_len)
                   for ti, t in enumerate(raw_tokens))
    for a, b in zip(tokens, tokens[1:]):
        if b.start <= a.end:
            raise SpanError(f"{path}.tokens[{b.i}]: char span overlaps or "
                            f"precedes token {a.i}")
    for token in tokens:
        if not 0 <= token.head < len(tokens):
            raise SpanError(f"{path}.tokens[{token.i}].head: "
                            f"{token.head} out of range")
    _check_iob(tokens, si)
    return Sentence(index=si, tokens=tokens)


def _check_token_span(sent: int, start: int, end: int,
                      sentences: tuple[Sentence, ...], path: str) -> None:
    if not 0 <= sent < len(sentences):
        raise SpanError(f"{path}.sent: {sent} out of range")
    n = len(sentences[sent].tokens)
    if not (0 <= start < end <= n):
        raise SpanError(f"{path}: token span {start}..{end} invalid for "
                        f"sentence of {n} tokens")


def _parse_entity(obj: object, ei: int, doc_text: str,
                  sentences: tuple[Sentence, ...]) -> EntityMention:
    path = f"entities[{ei}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected object")
    _check_keys(obj, ("text", "label", "sent", "start", "end"), path)
    ent = EntityMention(
        text=_get_str(obj, "text", path),
        label=_get_str(obj, "label", path),
        sent=_get_int(obj, "sent", path),
        start=_get_int(obj, "start", path),
        end=_get_int(obj, "end", path),
    )
    if not ent.label:
        raise SchemaError(f"{path}.label: empty label")
    _check_token_span(ent.sent, ent.start, ent.end, sentences, path)
    tokens = sentences[ent.sent].tokens
    covered = doc_text[tokens[ent.start].start:tokens[ent.end - 1].end + 1]
    if ent.text != covered:
        raise SchemaError(f"{path}.text: {ent.text!r} does not match covered "
                          f"tokens {covered!r}")
    return ent


def _parse_cluster(obj: object, ci: int,
                   sentences: tuple[Sentence, ...]) -> CorefCluster:
    path = f"coref[{ci}]"
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected object")
    _check_keys(obj, ("main", "mentions"), path)
    raw_mentions = _get_list(obj, "mentions", path)
    if len(raw_mentions) < 2:
        raise SchemaError(f"{path}.mentions: cluster needs at least 2 mentions")
    mentions = []
    for mi, m in enumerate(raw_mentions):
        mpath = f"{path}.mentions[{mi}]"
        if not isinstance(m, dict):
            raise SchemaError(f"{mpath}: expected object")
        _check_keys(m, ("sent", "start", "end"), mpath)
        span = MentionSpan(sent=_get_int(m, "sent", mpath),
                           start=_get_int(m, "start", mpath),
                           end=_get_int(m, "end", mpath))
        _check_token_span(span.sent, span.start, span.end, sentences, mpath)
        mentions.append(span)
    main = _get_int(obj, "main", path)
    if not 0 <= main < len(mentions):
        raise SchemaError(f"{path}.main: {main} out of range")
    return CorefCluster(main=main, mentions=tuple(mentions))


def parse_annotation(content: bytes | str) -> AnnotatedDocument:
    """Parse and validate one interchange JSON document.

    Raises SchemaError, SpanError, or IobError; a document that parses
    satisfies every invariant the rest of the pipeline relies on.
    """
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"document is not valid UTF-8: {exc}") from None
    try:
        data = json.loads(content)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("document: expected top-level object")
    _check_keys(data, ("doc_id", "text", "sentences", "entities", "coref"),
                "document")
    doc_id = _get_str(data, "doc_id", "document")
    text = _get_str(data, "text", "document")
    sentences = tuple(_parse_sentence(s, si, len(text))
                      for si, s in enumerate(_get_list(data, "sentences", "document")))
    entities = tuple(_parse_entity(e, ei, text, sentences)
                     for ei, e in enumerate(_get_list(data, "entities", "document")))
    coref = tuple(_parse_cluster(c, ci, sentences)
                  for ci, c in enumerate(_get_list(data, "coref", "document")))
    return AnnotatedDocument(doc_id=doc_id, text=text, sentences=sentences,
                             entities=entities, coref=coref)


def load_annotation(path) -> AnnotatedDocument:
    """Read and parse an interchange JSON file."""
    with open(path, "rb") as fh:
        return parse_annotation(fh.read())


def serialize_annotation(doc: AnnotatedDocument) -> str:
    """Canonical JSON for a document; parse_annotation inverts this exactly."""
    data = {
        "doc_id": doc.doc_id,
        "text": doc.text,
        "sentences": [
            {"tokens": [{"i": t.i, "text": t.text, "ent_type": t.ent_type,
                         "iob": t.iob, "pos": t.pos, "tag": t.tag,
                         "start": t.start, "end": t.end, "dep": t.dep,
                         "head": t.head}
                        for t in sentence.tokens]}
            for sentence in doc.sentences
        ],
        "entities": [
            {"text": e.text, "label": e.label, "sent": e.sent,
             "start": e.start, "end": e.end}
            for e in doc.entities
        ],
        "coref": [
            {"main": c.main,
             "mentions": [{"sent": m.sent, "start": m.start, "end": m.end}
                          for m in c.mentions]}
            for c in doc.coref
        ],
    }
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def normalize_pos(doc: AnnotatedDocument) -> AnnotatedDocument:
    """Relabel coarse POS AUX as VERB.

    Modern annotators tag auxiliaries AUX; the chunk grammar expects the
    older convention where "was" is simply a VERB.
    """
    changed = False
    sentences = []
    for sentence in doc.sentences:
        tokens = tuple(replace(t, pos="VERB") if t.pos == "AUX" else t
                       for t in sentence.tokens)
        if tokens != sentence.tokens:
            changed = True
            sentence = replace(sentence, tokens=tokens)
        sentences.append(sentence)
    if not changed:
        return doc
    return replace(doc, sentences=tuple(sentences))
