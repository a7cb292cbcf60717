"""Serializers: triple/metrics/enriched TSV, JSONL, DOT, GraphML, and JSON.

Every writer is deterministic; identical inputs give byte-identical text.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from .chunker import ChunkedDocument
from .enrich import EnrichedTriple
from .extractor import Triple
from .graph import CentralityReport

__all__ = [
    "TSVFormatError",
    "NODE_COLORS",
    "format_triples_tsv",
    "parse_triples_tsv",
    "format_triples_jsonl",
    "parse_triples_jsonl",
    "format_chunks_tsv",
    "format_metrics_tsv",
    "format_enriched_tsv",
    "parse_enriched_tsv",
    "export_dot",
    "export_graphml",
    "export_json",
]

# Fill colors per five-type entity label (see README).
NODE_COLORS = {
    "PER": "red",
    "ORG": "blue",
    "LOC": "green",
    "MISC": "orange",
    "O": "gray",
}

_TRIPLE_HEADER = "head\trelation\ttail\tprovenance"
_METRICS_HEADER = "node\tdegree\tbetweenness"
_ENRICHED_HEADER = ("head\trelation\ttail\trelation_label\ttype_h\ttype_t"
                    "\tdeg_h\tdeg_t\tbetw_h\tbetw_t")
_CHUNKS_HEADER = "sent\tphrase\ttext\tkind"


class TSVFormatError(ValueError):
    """Malformed triple TSV/JSONL input."""


def _cell(value: str) -> str:
    # tabs and newlines would break the row structure
    return value.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def _provenance(triple: Triple) -> str:
    return "graph" if triple.sentence is None else f"sentence:{triple.sentence}"


def _parse_provenance(text: str, where: str) -> int | None:
    if text == "graph":
        return None
    kind, sep, index = text.partition(":")
    if kind == "sentence" and sep and index.isdigit():
        return int(index)
    raise TSVFormatError(f"{where}: bad provenance {text!r}")


def format_triples_tsv(triples: list[Triple]) -> str:
    lines = [_TRIPLE_HEADER]
    for t in triples:
        lines.append("\t".join((_cell(t.head), _cell(t.relation),
                                _cell(t.tail), _provenance(t))))
    return "\n".join(lines) + "\n"


def parse_triples_tsv(text: str) -> list[Triple]:
    lines = text.splitlines()
    if not lines or lines[0] != _TRIPLE_HEADER:
        raise TSVFormatError("missing triple TSV header")
    triples = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 4:
            raise TSVFormatError(f"line {lineno}: expected 4 columns, "
                                 f"got {len(cells)}")
        head, relation, tail, provenance = cells
        triples.append(Triple(head, relation, tail,
                              sentence=_parse_provenance(provenance,
                                                         f"line {lineno}")))
    return triples


def format_triples_jsonl(triples: list[Triple]) -> str:
    lines = []
    for t in triples:
        lines.append(json.dumps(
            {"head": t.head, "relation": t.relation, "tail": t.tail,
             "provenance": _provenance(t)},
            ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_triples_jsonl(text: str) -> list[Triple]:
    triples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TSVFormatError(f"line {lineno}: invalid JSON: {exc}") from None
        if not isinstance(row, dict) or set(row) != {"head", "relation",
                                                     "tail", "provenance"}:
            raise TSVFormatError(f"line {lineno}: unexpected fields")
        triples.append(Triple(row["head"], row["relation"], row["tail"],
                              sentence=_parse_provenance(row["provenance"],
                                                         f"line {lineno}")))
    return triples


def format_chunks_tsv(cd: ChunkedDocument) -> str:
    lines = [_CHUNKS_HEADER]
    for c in cd.chunks:
        lines.append(f"{c.sent}\t{c.order}\t{_cell(c.text)}\t{c.kind}")
    return "\n".join(lines) + "\n"


def format_metrics_tsv(report: CentralityReport) -> str:
    lines = [_METRICS_HEADER]
    for node in sorted(report.degree):
        lines.append(f"{_cell(node)}\t{report.degree[node]}"
                     f"\t{report.betweenness[node]:.2f}")
    return "\n".join(lines) + "\n"


def format_enriched_tsv(enriched: list[EnrichedTriple]) -> str:
    # betweenness uses repr so the enriched TSV round-trips exactly
    lines = [_ENRICHED_HEADER]
    for e in enriched:
        t = e.triple
        lines.append("\t".join((
            _cell(t.head), _cell(t.relation), _cell(t.tail),
            _cell(e.relation_label), e.head_type, e.tail_type,
            str(e.head_degree), str(e.tail_degree),
            repr(e.head_betweenness), repr(e.tail_betweenness))))
    return "\n".join(lines) + "\n"


def parse_enriched_tsv(text: str) -> list[EnrichedTriple]:
    lines = text.splitlines()
    if not lines or lines[0] != _ENRICHED_HEADER:
        raise TSVFormatError("missing enriched TSV header")
    enriched = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 10:
            raise TSVFormatError(f"line {lineno}: expected 10 columns, "
                                 f"got {len(cells)}")
        try:
            enriched.append(EnrichedTriple(
                triple=Triple(cells[0], cells[1], cells[2]),
                relation_label=cells[3],
                head_type=cells[4], tail_type=cells[5],
                head_degree=int(cells[6]), tail_degree=int(cells[7]),
                head_betweenness=float(cells[8]),
                tail_betweenness=float(cells[9])))
        except ValueError as exc:
            raise TSVFormatError(f"line {lineno}: {exc}") from None
    return enriched


def _node_table(enriched: list[EnrichedTriple]) -> dict[str, tuple[str, int, float]]:
    nodes: dict[str, tuple[str, int, float]] = {}
    for e in enriched:
        t = e.triple
        nodes.setdefault(t.head, (e.head_type, e.head_degree, e.head_betweenness))
        nodes.setdefault(t.tail, (e.tail_type, e.tail_degree, e.tail_betweenness))
    return nodes


def _sorted_edges(enriched: list[EnrichedTriple]) -> list[EnrichedTriple]:
    return sorted(enriched,
                  key=lambda e: (e.triple.head, e.triple.relation, e.triple.tail))


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(enriched: list[EnrichedTriple]) -> str:
    """Graphviz digraph; node size tracks degree, fill color entity type."""
    if not enriched:
        return "digraph G { }\n"
    nodes = _node_table(enriched)
    lines = ["digraph G {", "  node [shape=ellipse, style=filled];"]
    for name in sorted(nodes):
        node_type, degree, _ = nodes[name]
        width = 0.5 + 0.25 * degree
        lines.append(f"  {_dot_quote(name)} [width={width:.2f}, "
                     f"fillcolor={NODE_COLORS.get(node_type, 'gray')}];")
    for e in _sorted_edges(enriched):
        t = e.triple
        lines.append(f"  {_dot_quote(t.head)} -> {_dot_quote(t.tail)} "
                     f"[label={_dot_quote(t.relation)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graphml(enriched: list[EnrichedTriple]) -> str:
    """GraphML with typed node attributes (label, type, degree, betweenness)
    and relation-labeled edges."""
    nodes = _node_table(enriched)
    ids = {name: f"n{i}" for i, name in enumerate(sorted(nodes))}
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"',
        '         xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"',
        '         xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
        ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
        '  <key id="type" for="node" attr.name="type" attr.type="string"/>',
        '  <key id="degree" for="node" attr.name="degree" attr.type="int"/>',
        '  <key id="betweenness" for="node" attr.name="betweenness"'
        ' attr.type="double"/>',
        '  <key id="relation" for="edge" attr.name="relation"'
        ' attr.type="string"/>',
        '  <graph id="G" edgedefault="directed">',
    ]
    for name in sorted(nodes):
        node_type, degree, betweenness = nodes[name]
        lines.extend((
            f'    <node id="{ids[name]}">',
            f'      <data key="label">{escape(name)}</data>',
            f'      <data key="type">{node_type}</data>',
            f'      <data key="degree">{degree}</data>',
            f'      <data key="betweenness">{betweenness!r}</data>',
            '    </node>',
        ))
    for e in _sorted_edges(enriched):
        t = e.triple
        lines.extend((
            f'    <edge source="{ids[t.head]}" target="{ids[t.tail]}">',
            f'      <data key="relation">{escape(t.relation)}</data>',
            '    </edge>',
        ))
    lines.extend(("  </graph>", "</graphml>"))
    return "\n".join(lines) + "\n"


def export_json(enriched: list[EnrichedTriple]) -> str:
    """Plain JSON graph dump: nodes with metadata plus labeled edges."""
    nodes = _node_table(enriched)
    data = {
        "nodes": [
            {"id": name, "type": nodes[name][0], "degree": nodes[name][1],
             "betweenness": nodes[name][2]}
            for name in sorted(nodes)
        ],
        "edges": [
            {"head": e.triple.head, "relation": e.triple.relation,
             "tail": e.triple.tail, "relation_label": e.relation_label}
            for e in _sorted_edges(enriched)
        ],
    }
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
