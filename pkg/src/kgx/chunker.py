"""Phrase chunking: partitions each sentence into ENTITY, VERB, and
pass-through chunks by POS grammar rules plus entity-span promotion."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .ingest import AnnotatedDocument, EntityMention, Sentence

__all__ = [
    "NOMINAL_ENTITY_LABELS",
    "Chunk",
    "ChunkedDocument",
    "promote_entity_spans",
    "chunk_document",
]

# Entity labels whose spans act as indivisible noun units. Adjectival and
# numeric labels (NORP, LANGUAGE, CARDINAL, ORDINAL, PERCENT, QUANTITY) are
# left to the base grammar: "an American multinational automaker" must stay
# one noun phrase even though "American" is a NORP mention.
NOMINAL_ENTITY_LABELS = frozenset({
    "PERSON", "ORG", "GPE", "LOC", "FAC", "DATE", "TIME", "MONEY",
    "EVENT", "PRODUCT", "WORK_OF_ART", "LAW",
})

ENTITY = "ENTITY"
VERB = "VERB"

# Internal unit classes during grammar matching. A promoted entity span is
# one atomic nominal unit regardless of the POS tags inside it.
_SPAN = "<span>"
_NP = "<np>"

_NP_MIDDLE = frozenset({"ADJ", "NUM", "NOUN", "PROPN", _SPAN})
_NP_FINAL = frozenset({"NOUN", "PROPN", "PRON", _SPAN})
_POSSESSIVE_TAGS = frozenset({"PRP$", "POS", "WP$"})

_VERB_MERGE_RULES = (
    (VERB, "PART"),
    (VERB, "ADP"),
    ("ADP", VERB),
    ("PART", VERB),
    (VERB, VERB),
)
_ADV_MERGE_RULES = (
    (VERB, "ADV"),
    ("ADV", VERB),
)


@dataclass(frozen=True)
class Chunk:
    sent: int
    order: int        # phrase number within the document
    text: str
    kind: str         # ENTITY, VERB, or a coarse POS for pass-through tokens
    start: int        # token span within the sentence, end exclusive
    end: int


@dataclass(frozen=True)
class ChunkedDocument:
    doc: AnnotatedDocument
    chunks: tuple[Chunk, ...]

    def sentence_chunks(self, sent: int) -> tuple[Chunk, ...]:
        return tuple(c for c in self.chunks if c.sent == sent)


def promote_entity_spans(sentence: Sentence,
                         entities: tuple[EntityMention, ...]) -> list[tuple[int, int]]:
    """Token spans of this sentence's nominal entity mentions.

    Overlapping mentions keep the earliest span and drop the rest.
    """
    spans: list[tuple[int, int]] = []
    candidates = sorted(
        (e.start, e.end) for e in entities
        if e.sent == sentence.index and e.label in NOMINAL_ENTITY_LABELS)
    taken = -1
    for start, end in candidates:
        if start >= taken:
            spans.append((start, end))
            taken = end
    return spans


@dataclass
class _Unit:
    start: int
    end: int          # token span, end exclusive
    cls: str          # _SPAN, _NP, VERB, or a coarse POS
    parens: int = 0   # nesting depth of stripped outer parentheses


def _initial_units(sentence: Sentence, promoted: list[tuple[int, int]]) -> list[_Unit]:
    starts = {s: e for s, e in promoted}
    units = []
    i = 0
    n = len(sentence.tokens)
    while i < n:
        if i in starts:
            units.append(_Unit(i, starts[i], _SPAN))
            i = starts[i]
        else:
            units.append(_Unit(i, i + 1, sentence.tokens[i].pos))
            i += 1
    return units


def _opens_np(unit: _Unit, sentence: Sentence) -> bool:
    if unit.cls == "DET":
        return True
    if unit.end - unit.start == 1:
        return sentence.tokens[unit.start].tag in _POSSESSIVE_TAGS
    return False


def _match_np(units: list[_Unit], u: int, sentence: Sentence) -> int | None:
    """Length in units of the noun phrase starting at u, or None.

    Pattern: optional determiner/possessive, then modifiers and nominals,
    ending on a noun, proper noun, pronoun, or promoted span. Greedy, then
    trimmed back to the last valid final unit.
    """
    n = len(units)
    v = u
    if _opens_np(units[v], sentence) and v + 1 < n:
        v += 1
    k = v
    while k < n and units[k].cls in _NP_MIDDLE:
        k += 1
    if k < n and units[k].cls == "PRON":
        k += 1
    m = k - 1
    while m >= v and units[m].cls not in _NP_FINAL:
        m -= 1
    if m < v:
        return None
    return m + 1 - u


def _mark_noun_phrases(units: list[_Unit], sentence: Sentence) -> list[_Unit]:
    out: list[_Unit] = []
    u = 0
    while u < len(units):
        length = _match_np(units, u, sentence)
        if length is None:
            out.append(units[u])
            u += 1
        else:
            out.append(_Unit(units[u].start, units[u + length - 1].end, _NP))
            u += length
    return out


def _is_literal(unit: _Unit, sentence: Sentence, text: str, fold: bool = False) -> bool:
    if unit.end - unit.start != 1:
        return False
    token_text = sentence.tokens[unit.start].text
    if fold:
        token_text = token_text.casefold()
    return token_text == text


def _merge(units: list[_Unit], i: int, count: int, cls: str, parens: int = 0) -> None:
    merged = _Unit(units[i].start, units[i + count - 1].end, cls, parens)
    units[i:i + count] = [merged]


def _apply_paren_rule(units: list[_Unit], sentence: Sentence) -> bool:
    for i in range(len(units) - 2):
        if (units[i + 1].cls == _NP
                and _is_literal(units[i], sentence, "(")
                and _is_literal(units[i + 2], sentence, ")")):
            _merge(units, i, 3, _NP, parens=units[i + 1].parens + 1)
            return True
    return False


def _apply_of_rule(units: list[_Unit], sentence: Sentence) -> bool:
    for i in range(len(units) - 2):
        if (units[i].cls == _NP and units[i + 2].cls == _NP
                and _is_literal(units[i + 1], sentence, "of", fold=True)):
            _merge(units, i, 3, _NP)
            return True
    return False


def _apply_pair_rule(units: list[_Unit], left: str, right: str, cls: str) -> bool:
    for i in range(len(units) - 1):
        if units[i].cls == left and units[i + 1].cls == right:
            _merge(units, i, 2, cls)
            return True
    return False


def _merge_noun_phrases(units: list[_Unit], sentence: Sentence) -> None:
    """Apply the ENTITY merge rules to fixpoint, leftmost application first.

    Rule order per pass: parenthesized NP, then NP "of" NP, then NP NP.
    """
    changed = True
    while changed:
        changed = (_apply_paren_rule(units, sentence)
                   or _apply_of_rule(units, sentence)
                   or _apply_pair_rule(units, _NP, _NP, _NP))


def _merge_verbs(units: list[_Unit], adv_in_verb_chunks: bool) -> None:
    rules = _VERB_MERGE_RULES + (_ADV_MERGE_RULES if adv_in_verb_chunks else ())
    changed = True
    while changed:
        changed = False
        for left, right in rules:
            if _apply_pair_rule(units, left, right, VERB):
                changed = True
                break


def _chunk_text(doc: AnnotatedDocument, sentence: Sentence, unit: _Unit) -> str:
    tokens = sentence.tokens
    text = doc.text[tokens[unit.start].start:tokens[unit.end - 1].end + 1]
    # Paren-rule chunks keep the parentheses in their span but not their text.
    for _ in range(unit.parens):
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1].strip()
    return text


def chunk_document(doc: AnnotatedDocument,
                   adv_in_verb_chunks: bool = False) -> ChunkedDocument:
    """Partition every sentence of a normalized document into chunks.

    Per sentence: promote nominal entity spans, mark base noun phrases,
    merge them (parenthetical, "of" linkage, adjacency), then merge verb
    chunks with neighboring particles/adpositions/verbs. Whatever remains
    becomes a singleton chunk carrying its coarse POS.
    """
    chunks: list[Chunk] = []
    order = 0
    for sentence in doc.sentences:
        promoted = promote_entity_spans(sentence, doc.entities)
        units = _initial_units(sentence, promoted)
        units = _mark_noun_phrases(units, sentence)
        _merge_noun_phrases(units, sentence)
        _merge_verbs(units, adv_in_verb_chunks)
        for unit in units:
            kind = ENTITY if unit.cls in (_NP, _SPAN) else unit.cls
            chunks.append(Chunk(sent=sentence.index, order=order,
                                text=_chunk_text(doc, sentence, unit),
                                kind=kind, start=unit.start, end=unit.end))
            order += 1
    return ChunkedDocument(doc=doc, chunks=tuple(chunks))
