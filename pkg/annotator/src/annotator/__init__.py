"""Rule-based text annotation: tokens, tags, entities, coreference."""

from .annotate import (
    AnnotationBuildError,
    annotate_text,
    document_json,
    validate_document,
)
from .coref import Cluster, build_clusters
from .entities import EntitySpan, find_entities
from .postag import tag_sentence, tag_word
from .tokenizer import RawToken, split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "AnnotationBuildError",
    "Cluster",
    "EntitySpan",
    "RawToken",
    "annotate_text",
    "build_clusters",
    "document_json",
    "find_entities",
    "split_sentences",
    "tag_sentence",
    "tag_word",
    "tokenize",
    "validate_document",
    "__version__",
]
