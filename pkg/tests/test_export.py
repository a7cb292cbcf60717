"""TSV/JSONL round-trips and DOT/GraphML/JSON graph writers."""

from __future__ import annotations

import json
from dataclasses import replace
from xml.dom import minidom

import pytest

from kgx.chunker import chunk_document
from kgx.coref import resolve_coreferences
from kgx.enrich import EnrichedTriple, RelationTyper, enrich_triples
from kgx.export import (
    NODE_COLORS,
    TSVFormatError,
    export_dot,
    export_graphml,
    export_json,
    format_chunks_tsv,
    format_enriched_tsv,
    format_metrics_tsv,
    format_triples_jsonl,
    format_triples_tsv,
    parse_enriched_tsv,
    parse_triples_jsonl,
    parse_triples_tsv,
)
from kgx.extractor import Triple, extract_triples
from kgx.graph import build_graph, centrality_report
from kgx.ingest import load_annotation, normalize_pos

from helpers import FIXTURE, GOLDEN_CHUNKS


@pytest.fixture(scope="module")
def fixture_doc():
    return load_annotation(FIXTURE)


@pytest.fixture(scope="module")
def fixture_triples(fixture_doc):
    return extract_triples(fixture_doc)


@pytest.fixture(scope="module")
def fixture_enriched(fixture_doc, fixture_triples):
    report = centrality_report(build_graph(fixture_triples))
    return enrich_triples(fixture_triples, fixture_doc, report)


# ---------------------------------------------------------------------------
# triple TSV and JSONL
# ---------------------------------------------------------------------------

def test_triples_tsv_round_trip(fixture_triples):
    text = format_triples_tsv(fixture_triples)
    assert text.startswith("head\trelation\ttail\tprovenance\n")
    assert parse_triples_tsv(text) == fixture_triples


def test_triples_tsv_provenance_column(fixture_triples):
    lines = format_triples_tsv(fixture_triples).splitlines()[1:]
    provenance = [line.split("\t")[3] for line in lines]
    assert provenance == ["sentence:0"] * 5 + ["sentence:1"] * 2 + ["graph"] * 7


def test_tsv_cells_are_sanitized():
    dirty = [Triple("a\tb", "r\n", "t\rx", 0)]
    parsed = parse_triples_tsv(format_triples_tsv(dirty))
    assert parsed == [Triple("a b", "r ", "t x", 0)]


def test_triples_tsv_rejects_bad_input():
    with pytest.raises(TSVFormatError, match="header"):
        parse_triples_tsv("nope\n")
    with pytest.raises(TSVFormatError, match="expected 4 columns"):
        parse_triples_tsv("head\trelation\ttail\tprovenance\na\tb\tc\n")
    with pytest.raises(TSVFormatError, match="bad provenance"):
        parse_triples_tsv("head\trelation\ttail\tprovenance\na\tb\tc\tpara:1\n")
    with pytest.raises(TSVFormatError, match="bad provenance"):
        parse_triples_tsv("head\trelation\ttail\tprovenance\n"
                          "a\tb\tc\tsentence:x\n")


def test_triples_tsv_skips_blank_lines(fixture_triples):
    text = format_triples_tsv(fixture_triples) + "\n\n"
    assert parse_triples_tsv(text) == fixture_triples


def test_triples_jsonl_round_trip(fixture_triples):
    text = format_triples_jsonl(fixture_triples)
    assert parse_triples_jsonl(text) == fixture_triples
    assert format_triples_jsonl([]) == ""
    assert parse_triples_jsonl("") == []


def test_triples_jsonl_rejects_bad_rows():
    with pytest.raises(TSVFormatError, match="invalid JSON"):
        parse_triples_jsonl("{broken\n")
    row = json.dumps({"head": "a", "relation": "r", "tail": "t",
                      "provenance": "graph", "extra": 1})
    with pytest.raises(TSVFormatError, match="unexpected fields"):
        parse_triples_jsonl(row)


# ---------------------------------------------------------------------------
# chunk and metrics tables
# ---------------------------------------------------------------------------

def test_chunks_tsv(fixture_doc):
    cd = resolve_coreferences(chunk_document(normalize_pos(fixture_doc)))
    lines = format_chunks_tsv(cd).splitlines()
    assert lines[0] == "sent\tphrase\ttext\tkind"
    assert len(lines) == 21
    assert lines[1] == "0\t0\tFord Motor Company\tENTITY"
    # chunk 13 was rewritten by coreference resolution
    assert lines[14] == "1\t13\tFord Motor Company\tENTITY"
    kinds = [line.split("\t")[3] for line in lines[1:]]
    assert kinds == [kind for _, kind in GOLDEN_CHUNKS]


def test_metrics_tsv(fixture_triples):
    report = centrality_report(build_graph(fixture_triples))
    lines = format_metrics_tsv(report).splitlines()
    assert lines[0] == "node\tdegree\tbetweenness"
    assert len(lines) == 9
    names = [line.split("\t")[0] for line in lines[1:]]
    assert names == sorted(names)
    assert "Ford Motor Company\t6\t11.00" in lines
    assert "American multinational automaker\t5\t1.75" in lines
    assert "Henry Ford\t2\t0.00" in lines


# ---------------------------------------------------------------------------
# enriched TSV
# ---------------------------------------------------------------------------

def test_enriched_tsv_round_trip(fixture_enriched):
    text = format_enriched_tsv(fixture_enriched)
    assert text.startswith("head\trelation\ttail\trelation_label\t"
                           "type_h\ttype_t\tdeg_h\tdeg_t\tbetw_h\tbetw_t\n")
    parsed = parse_enriched_tsv(text)
    # provenance is not part of the enriched table
    expected = [replace(e, triple=replace(e.triple, sentence=None))
                for e in fixture_enriched]
    assert parsed == expected


def test_enriched_tsv_betweenness_is_exact(fixture_enriched):
    parsed = parse_enriched_tsv(format_enriched_tsv(fixture_enriched))
    for before, after in zip(fixture_enriched, parsed):
        assert after.head_betweenness == before.head_betweenness
        assert after.tail_betweenness == before.tail_betweenness


def test_enriched_tsv_rejects_bad_input():
    with pytest.raises(TSVFormatError, match="header"):
        parse_enriched_tsv("x\n")
    header = ("head\trelation\ttail\trelation_label\ttype_h\ttype_t"
              "\tdeg_h\tdeg_t\tbetw_h\tbetw_t")
    with pytest.raises(TSVFormatError, match="expected 10 columns"):
        parse_enriched_tsv(header + "\na\tb\tc\n")
    bad_int = header + "\na\tr\tt\tOther\tO\tO\tx\t2\t0.0\t0.0\n"
    with pytest.raises(TSVFormatError, match="line 2"):
        parse_enriched_tsv(bad_int)


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

def test_palette():
    assert NODE_COLORS == {"PER": "red", "ORG": "blue", "LOC": "green",
                           "MISC": "orange", "O": "gray"}


def test_dot_empty():
    assert export_dot([]) == "digraph G { }\n"


def test_dot_fixture(fixture_enriched):
    out = export_dot(fixture_enriched)
    assert out.startswith("digraph G {\n  node [shape=ellipse, style=filled];")
    assert out.endswith("}\n")
    # width = 0.5 + 0.25 * degree; color from the five-type palette
    assert '"Ford Motor Company" [width=2.00, fillcolor=blue];' in out
    assert '"Dearborn" [width=1.25, fillcolor=green];' in out
    assert '"Henry Ford" [width=1.00, fillcolor=red];' in out
    assert '"main headquarters" [width=1.50, fillcolor=gray];' in out
    assert ('"Ford Motor Company" -> "Henry Ford" '
            '[label="was founded by"];') in out
    assert out.count("->") == 14


def test_dot_is_deterministic(fixture_enriched):
    assert export_dot(fixture_enriched) == export_dot(fixture_enriched)


def test_dot_quoting():
    row = EnrichedTriple(triple=Triple('say "hi"', "r", "x\\y", None),
                         relation_label="Other", head_type="O", tail_type="O",
                         head_degree=1, tail_degree=1,
                         head_betweenness=0.0, tail_betweenness=0.0)
    out = export_dot([row])
    assert r'"say \"hi\""' in out
    assert r'"x\\y"' in out


# ---------------------------------------------------------------------------
# GraphML
# ---------------------------------------------------------------------------

def test_graphml_fixture(fixture_enriched):
    out = export_graphml(fixture_enriched)
    dom = minidom.parseString(out.encode("utf-8"))
    nodes = dom.getElementsByTagName("node")
    edges = dom.getElementsByTagName("edge")
    assert len(nodes) == 8
    assert len(edges) == 14
    assert [n.getAttribute("id") for n in nodes] == [f"n{i}" for i in range(8)]

    def data(element, key):
        for child in element.getElementsByTagName("data"):
            if child.getAttribute("key") == key:
                return child.firstChild.data
        raise AssertionError(f"no data {key}")

    by_label = {data(n, "label"): n for n in nodes}
    company = by_label["Ford Motor Company"]
    assert data(company, "type") == "ORG"
    assert data(company, "degree") == "6"
    assert abs(float(data(company, "betweenness")) - 11.0) <= 1e-9
    ids = {n.getAttribute("id") for n in nodes}
    for edge in edges:
        assert edge.getAttribute("source") in ids
        assert edge.getAttribute("target") in ids
    graphs = dom.getElementsByTagName("graph")
    assert graphs[0].getAttribute("edgedefault") == "directed"


def test_graphml_escapes_markup():
    row = EnrichedTriple(triple=Triple("a<b", "r&s", 'c"d', None),
                         relation_label="Other", head_type="O", tail_type="O",
                         head_degree=1, tail_degree=1,
                         head_betweenness=0.0, tail_betweenness=0.0)
    out = export_graphml([row])
    dom = minidom.parseString(out.encode("utf-8"))
    labels = [d.firstChild.data for d in dom.getElementsByTagName("data")
              if d.getAttribute("key") == "label"]
    assert labels == ["a<b", 'c"d']


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def test_json_fixture(fixture_enriched):
    data = json.loads(export_json(fixture_enriched))
    assert set(data) == {"nodes", "edges"}
    assert len(data["nodes"]) == 8
    assert len(data["edges"]) == 14
    ids = [n["id"] for n in data["nodes"]]
    assert ids == sorted(ids)
    company = next(n for n in data["nodes"] if n["id"] == "Ford Motor Company")
    assert company["type"] == "ORG"
    assert company["degree"] == 6
    assert abs(company["betweenness"] - 11.0) <= 1e-9
    keys = [(e["head"], e["relation"], e["tail"]) for e in data["edges"]]
    assert keys == sorted(keys)
    assert all(e["relation_label"] == "Other" for e in data["edges"])


def test_json_carries_relation_labels(fixture_doc, fixture_triples):
    report = centrality_report(build_graph(fixture_triples))
    typer = RelationTyper(table={"was founded by": "Founder"})
    enriched = enrich_triples(fixture_triples, fixture_doc, report, typer=typer)
    data = json.loads(export_json(enriched))
    labels = {e["relation"]: e["relation_label"] for e in data["edges"]}
    assert labels["was founded by"] == "Founder"
    assert labels["is"] == "Other"
