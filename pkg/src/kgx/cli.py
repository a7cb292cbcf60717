"""Command-line front end: each pipeline stage is independently invocable,
plus a batch `pipeline` command writing all artifacts per document."""

from __future__ import annotations

import argparse
import os
import re
import sys
import tempfile

from .chunker import chunk_document
from .config import ConfigError, PipelineConfig, load_config
from .coref import resolve_coreferences
from .enrich import RelationTyper, SidecarFormatError, enrich_triples
from .export import (TSVFormatError, export_dot, export_graphml, export_json,
                     format_chunks_tsv, format_enriched_tsv,
                     format_metrics_tsv, format_triples_jsonl,
                     format_triples_tsv, parse_enriched_tsv,
                     parse_triples_jsonl, parse_triples_tsv)
from .extractor import extract_triples
from .graph import build_graph, centrality_report
from .ingest import AnnotationError, clean_text, load_annotation, normalize_pos

__all__ = ["main", "run_pipeline"]

CONFIG_ENV_VAR = "KGX_CONFIG"

EXPORT_FORMATS = {
    "dot": (export_dot, "dot"),
    "graphml": (export_graphml, "graphml"),
    "json": (export_json, "json"),
}

_INPUT_ERRORS = (AnnotationError, TSVFormatError, SidecarFormatError,
                 OSError, UnicodeDecodeError)


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kgx-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _fail(message: str) -> int:
    print(f"kgx: error: {message}", file=sys.stderr)
    return 1


def _resolve_config(path: str | None) -> PipelineConfig:
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return PipelineConfig()
    return load_config(path)


def _typer_for(cfg: PipelineConfig, sidecar_path: str | None = None) -> RelationTyper:
    return RelationTyper.from_files(table_path=cfg.relation_table_path,
                                    sidecar_path=sidecar_path)


def _cmd_clean(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    try:
        with open(args.in_path, encoding="utf-8") as fh:
            raw = fh.read()
    except _INPUT_ERRORS as exc:
        return _fail(f"{args.in_path}: {exc}")
    _write_atomic(args.out, clean_text(raw))
    return 0


def _cmd_extract(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    try:
        doc = load_annotation(args.ann)
    except _INPUT_ERRORS as exc:
        return _fail(f"{args.ann}: {exc}")
    if args.chunks:
        chunked = resolve_coreferences(chunk_document(
            normalize_pos(doc), adv_in_verb_chunks=cfg.adv_in_verb_chunks))
        _write_atomic(args.chunks, format_chunks_tsv(chunked))
    triples = extract_triples(doc, config=cfg)
    formatter = (format_triples_jsonl if args.format == "jsonl"
                 else format_triples_tsv)
    _write_atomic(args.out, formatter(triples))
    return 0


def _read_triples(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".jsonl"):
        return parse_triples_jsonl(text)
    return parse_triples_tsv(text)


def _cmd_metrics(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    try:
        triples = _read_triples(args.triples)
    except _INPUT_ERRORS as exc:
        return _fail(f"{args.triples}: {exc}")
    report = centrality_report(build_graph(triples))
    _write_atomic(args.out, format_metrics_tsv(report))
    return 0


def _cmd_enrich(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    try:
        doc = load_annotation(args.ann)
        triples = _read_triples(args.triples)
        typer = _typer_for(cfg, sidecar_path=args.sidecar)
    except _INPUT_ERRORS as exc:
        return _fail(str(exc))
    report = centrality_report(build_graph(triples))
    enriched = enrich_triples(triples, doc, report, typer=typer,
                              threshold=cfg.similarity_threshold)
    _write_atomic(args.out, format_enriched_tsv(enriched))
    return 0


def _cmd_export(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    try:
        with open(args.enriched, encoding="utf-8") as fh:
            enriched = parse_enriched_tsv(fh.read())
    except _INPUT_ERRORS as exc:
        return _fail(f"{args.enriched}: {exc}")
    formatter, _ = EXPORT_FORMATS[args.format]
    _write_atomic(args.out, formatter(enriched))
    return 0


def _output_stem(doc_id: str, fallback: str, used: set[str]) -> str:
    stem = re.sub(r"[^A-Za-z0-9._-]+", "_", doc_id).strip("._") or fallback
    candidate = stem
    serial = 1
    while candidate in used:
        serial += 1
        candidate = f"{stem}.{serial}"
    used.add(candidate)
    return candidate


def run_pipeline(cfg: PipelineConfig, paths: list[str], out_dir: str,
                 exports: tuple[str, ...] = ()) -> int:
    """Run the full pipeline over annotation files into an output directory.

    Per document: triples TSV, enriched TSV, metrics TSV, and any requested
    graph exports. A failing document is reported on stderr and skipped;
    the exit status is 1 if anything failed. manifest.tsv records every
    input with its status and output files.
    """
    cfg.validate()
    typer = _typer_for(cfg)
    os.makedirs(out_dir, exist_ok=True)
    manifest = ["input\tdoc_id\tstatus\toutputs"]
    used_stems: set[str] = set()
    failures = 0
    for path in paths:
        try:
            doc = load_annotation(path)
            triples = extract_triples(doc, config=cfg)
            report = centrality_report(build_graph(triples))
            enriched = enrich_triples(triples, doc, report, typer=typer,
                                      threshold=cfg.similarity_threshold)
        except _INPUT_ERRORS as exc:
            failures += 1
            print(f"kgx: error: {path}: {exc}", file=sys.stderr)
            manifest.append(f"{path}\t\terror\t")
            continue
        fallback = os.path.splitext(os.path.basename(path))[0] or "doc"
        stem = _output_stem(doc.doc_id, fallback, used_stems)
        outputs = [
            (f"{stem}.triples.tsv", format_triples_tsv(triples)),
            (f"{stem}.enriched.tsv", format_enriched_tsv(enriched)),
            (f"{stem}.metrics.tsv", format_metrics_tsv(report)),
        ]
        for fmt in exports:
            formatter, suffix = EXPORT_FORMATS[fmt]
            outputs.append((f"{stem}.{suffix}", formatter(enriched)))
        for name, data in outputs:
            _write_atomic(os.path.join(out_dir, name), data)
        names = ";".join(name for name, _ in outputs)
        manifest.append(f"{path}\t{doc.doc_id}\tok\t{names}")
    _write_atomic(os.path.join(out_dir, "manifest.tsv"),
                  "\n".join(manifest) + "\n")
    return 1 if failures else 0


def _cmd_pipeline(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    exports = tuple(dict.fromkeys(args.export or ()))
    return run_pipeline(cfg, args.ann, args.out_dir, exports=exports)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgx",
        description="Extract (head, relation, tail) triples from annotated "
                    "documents and export the resulting knowledge graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clean", help="normalize raw text before annotation")
    p.add_argument("--in", dest="in_path", required=True, metavar="RAW")
    p.add_argument("--out", required=True, metavar="TXT")
    p.set_defaults(func=_cmd_clean)

    p = sub.add_parser("extract", help="extract triples from an annotation file")
    p.add_argument("--ann", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="TSV")
    p.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    p.add_argument("--chunks", metavar="PATH",
                   help="also write the chunk table (debug view)")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("metrics", help="degree and betweenness per node")
    p.add_argument("--triples", required=True, metavar="TSV")
    p.add_argument("--out", required=True, metavar="TSV")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("enrich", help="attach entity types, relation labels, "
                                      "and centrality to triples")
    p.add_argument("--ann", required=True, metavar="FILE")
    p.add_argument("--triples", required=True, metavar="TSV")
    p.add_argument("--out", required=True, metavar="TSV")
    p.add_argument("--sidecar", metavar="TSV",
                   help="precomputed (head, relation, tail) -> label rows")
    p.set_defaults(func=_cmd_enrich)

    p = sub.add_parser("export", help="write a graph file from enriched triples")
    p.add_argument("--enriched", required=True, metavar="TSV")
    p.add_argument("--format", choices=sorted(EXPORT_FORMATS), required=True)
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("pipeline", help="run everything over many documents")
    p.add_argument("--ann", required=True, nargs="+", metavar="FILE")
    p.add_argument("--out-dir", required=True, metavar="DIR")
    p.add_argument("--config", metavar="FILE")
    p.add_argument("--export", action="append", choices=sorted(EXPORT_FORMATS),
                   metavar="FMT", help="graph formats to write per document "
                                       "(repeatable: dot, graphml, json)")
    p.set_defaults(func=_cmd_pipeline)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(getattr(args, "config", None))
        cfg.validate()
    except (ConfigError, OSError) as exc:
        return _fail(str(exc))
    try:
        return args.func(args, cfg)
    except _INPUT_ERRORS as exc:
        # unexpected I/O failure (e.g. unwritable output path)
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
