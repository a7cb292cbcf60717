"""Triple enrichment: five-type entity labels by edit-distance matching
against the document's NER mentions, plus a pluggable relation typer."""

from __future__ import annotations

from dataclasses import dataclass

from .extractor import Triple
from .graph import CentralityReport
from .ingest import AnnotatedDocument, EntityMention

__all__ = [
    "FIVE_TYPE_LABELS",
    "DEFAULT_SIMILARITY_THRESHOLD",
    "SidecarFormatError",
    "EnrichedTriple",
    "RelationTyper",
    "map_entity_label",
    "levenshtein",
    "phrase_similarity",
    "assign_entity_types",
    "type_relation",
    "enrich_triples",
]

FIVE_TYPE_LABELS = ("PER", "ORG", "LOC", "MISC", "O")

DEFAULT_SIMILARITY_THRESHOLD = 0.8

# Annotation label -> five-type label. Anything unlisted (DATE, TIME,
# MONEY, QUANTITY, PERCENT, ORDINAL, CARDINAL, empty) maps to O.
_LABEL_MAP = {
    "PERSON": "PER",
    "ORG": "ORG",
    "GPE": "LOC",
    "LOC": "LOC",
    "FAC": "LOC",
    "NORP": "MISC",
    "PRODUCT": "MISC",
    "EVENT": "MISC",
    "WORK_OF_ART": "MISC",
    "LANGUAGE": "MISC",
    "LAW": "MISC",
}


class SidecarFormatError(ValueError):
    """Malformed row in a relation-label table or sidecar file."""


def map_entity_label(label: str) -> str:
    """Collapse an annotation entity label to PER/ORG/LOC/MISC/O."""
    return _LABEL_MAP.get(label, "O")


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit insert/delete/substitute costs."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(previous[j] + 1,          # delete
                               current[j - 1] + 1,       # insert
                               previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def phrase_similarity(a: str, b: str) -> float:
    """Normalized similarity: 1 - distance / longer casefolded length."""
    fa, fb = a.casefold(), b.casefold()
    longest = max(len(fa), len(fb))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(fa, fb) / longest


def _phrases_in_order(triples: list[Triple]) -> list[str]:
    phrases: list[str] = []
    seen: set[str] = set()
    for t in triples:
        for phrase in (t.head, t.tail):
            if phrase not in seen:
                seen.add(phrase)
                phrases.append(phrase)
    return phrases


def assign_entity_types(triples: list[Triple],
                        entities: tuple[EntityMention, ...],
                        threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
                        ) -> dict[str, str]:
    """Best-matching entity label per phrase, O below the threshold.

    Ties go to the earliest entity in document order.
    """
    ordered = sorted(entities, key=lambda e: (e.sent, e.start, e.end))
    types: dict[str, str] = {}
    for phrase in _phrases_in_order(triples):
        best_label = "O"
        best_score = 0.0
        for entity in ordered:
            score = phrase_similarity(phrase, entity.text)
            if score > best_score:
                best_score = score
                best_label = entity.label
        types[phrase] = map_entity_label(best_label) if best_score >= threshold else "O"
    return types


def _read_rows(path, columns: int) -> list[list[str]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cells = line.split("\t")
            if len(cells) != columns:
                raise SidecarFormatError(
                    f"{path}:{lineno}: expected {columns} tab-separated "
                    f"columns, got {len(cells)}")
            rows.append(cells)
    return rows


class RelationTyper:
    """Maps relation phrases to structured labels.

    Exact lookup in a phrase table, overridden by sidecar rows keyed on the
    whole (head, relation, tail), falling back to "Other". Total: always
    returns a label.
    """

    FALLBACK = "Other"

    def __init__(self, table: dict[str, str] | None = None,
                 sidecar: dict[tuple[str, str, str], str] | None = None):
        self.table = dict(table or {})
        self.sidecar = dict(sidecar or {})

    @classmethod
    def from_files(cls, table_path=None, sidecar_path=None) -> "RelationTyper":
        table = {phrase: label
                 for phrase, label in (_read_rows(table_path, 2) if table_path else ())}
        sidecar = {(h, r, t): label
                   for h, r, t, label in (_read_rows(sidecar_path, 4)
                                          if sidecar_path else ())}
        return cls(table=table, sidecar=sidecar)

    def label(self, relation: str, triple: Triple | None = None) -> str:
        if triple is not None:
            hit = self.sidecar.get((triple.head, triple.relation, triple.tail))
            if hit is not None:
                return hit
        return self.table.get(relation, self.FALLBACK)


def type_relation(relation: str, typer: RelationTyper,
                  triple: Triple | None = None) -> str:
    """Structured label for a relation phrase (sidecar rows win)."""
    return typer.label(relation, triple=triple)


@dataclass(frozen=True)
class EnrichedTriple:
    triple: Triple
    relation_label: str
    head_type: str
    tail_type: str
    head_degree: int
    tail_degree: int
    head_betweenness: float
    tail_betweenness: float


def enrich_triples(triples: list[Triple], doc: AnnotatedDocument,
                   report: CentralityReport,
                   typer: RelationTyper | None = None,
                   threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
                   ) -> list[EnrichedTriple]:
    """One EnrichedTriple per input triple, order preserved.

    The report must come from exactly these triples; every phrase is then
    present in its degree and betweenness maps.
    """
    if typer is None:
        typer = RelationTyper()
    types = assign_entity_types(triples, doc.entities, threshold=threshold)
    return [
        EnrichedTriple(
            triple=t,
            relation_label=typer.label(t.relation, triple=t),
            head_type=types[t.head],
            tail_type=types[t.tail],
            head_degree=report.degree[t.head],
            tail_degree=report.degree[t.tail],
            head_betweenness=report.betweenness[t.head],
            tail_betweenness=report.betweenness[t.tail],
        )
        for t in triples
    ]
