"""kgx: knowledge-graph triple extraction from annotated documents.

The pipeline turns an annotated document (tokens, POS, entities, coref)
into (head, relation, tail) triples, expands locative links over the
document graph, filters and normalizes phrases, then enriches triples
with entity types and centrality for export as DOT/GraphML/JSON.
"""

from .ingest import (AnnotatedDocument, AnnotationError, CorefCluster,
                     EntityMention, IobError, MentionSpan, SchemaError,
                     Sentence, SpanError, Token, clean_text, load_annotation,
                     normalize_pos, parse_annotation, serialize_annotation)
from .chunker import (Chunk, ChunkedDocument, NOMINAL_ENTITY_LABELS,
                      chunk_document, promote_entity_spans)
from .coref import POSSESSIVE_PRONOUNS, resolve_coreferences
from .extractor import (Triple, expand_graph, extract_triples, filter_triples,
                        get_triples, load_stopwords, strip_articles)
from .graph import (CentralityReport, KnowledgeGraph, OracleTooLarge,
                    betweenness_centrality, brute_force_betweenness,
                    build_graph, centrality_report, degree_counts)
from .enrich import (EnrichedTriple, RelationTyper, SidecarFormatError,
                     assign_entity_types, enrich_triples, levenshtein,
                     map_entity_label, phrase_similarity, type_relation)
from .config import ConfigError, PipelineConfig, load_config, parse_config, serialize_config
from .export import (export_dot, export_graphml, export_json,
                     format_enriched_tsv, format_metrics_tsv,
                     format_triples_jsonl, format_triples_tsv,
                     parse_triples_jsonl, parse_triples_tsv)

__version__ = "0.1.0"
