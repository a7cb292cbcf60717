"""Pipeline configuration and its flat key=value file format."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .extractor import DEFAULT_PREPOSITIONS
from .enrich import DEFAULT_SIMILARITY_THRESHOLD

__all__ = ["ConfigError", "PipelineConfig", "parse_config", "serialize_config",
           "load_config"]


class ConfigError(ValueError):
    """Invalid configuration file or value."""


@dataclass
class PipelineConfig:
    stopwords_path: str | None = None
    similarity_threshold: float = DEFAULT_SIMILARITY_THRESHOLD
    relation_table_path: str | None = None
    expansion_prepositions: tuple[str, ...] = DEFAULT_PREPOSITIONS
    literal_leftright_mapping: bool = False
    adv_in_verb_chunks: bool = False

    def validate(self) -> None:
        if not 0.0 < self.similarity_threshold <= 1.0:
            raise ConfigError("similarity_threshold must be in (0, 1], got "
                              f"{self.similarity_threshold!r}")
        if not self.expansion_prepositions:
            raise ConfigError("expansion_prepositions must not be empty")
        for word in self.expansion_prepositions:
            if not word or word != word.lower() or " " in word:
                raise ConfigError("expansion_prepositions entries must be "
                                  f"non-empty lowercase words, got {word!r}")


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


def parse_config(text: str) -> PipelineConfig:
    """Parse a flat key=value config; keys are the PipelineConfig fields.

    Blank lines and lines starting with # are ignored. Unknown keys and
    out-of-range values are errors; nothing downstream runs on a config
    that did not validate.
    """
    known = {f.name for f in fields(PipelineConfig)}
    cfg = PipelineConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or key not in known:
            raise ConfigError(f"line {lineno}: unknown or malformed entry {line!r}")
        if key in ("stopwords_path", "relation_table_path"):
            setattr(cfg, key, value or None)
        elif key == "similarity_threshold":
            try:
                cfg.similarity_threshold = float(value)
            except ValueError:
                raise ConfigError(f"{key}: not a number: {value!r}") from None
        elif key == "expansion_prepositions":
            words = tuple(w.strip() for w in value.split(",") if w.strip())
            cfg.expansion_prepositions = words
        elif key == "literal_leftright_mapping":
            cfg.literal_leftright_mapping = _parse_bool(value, key)
        elif key == "adv_in_verb_chunks":
            cfg.adv_in_verb_chunks = _parse_bool(value, key)
    cfg.validate()
    return cfg


def serialize_config(cfg: PipelineConfig) -> str:
    """Normalized config text; parse_config inverts this."""
    lines = [
        f"stopwords_path={cfg.stopwords_path or ''}",
        f"similarity_threshold={cfg.similarity_threshold!r}",
        f"relation_table_path={cfg.relation_table_path or ''}",
        f"expansion_prepositions={','.join(cfg.expansion_prepositions)}",
        f"literal_leftright_mapping={'true' if cfg.literal_leftright_mapping else 'false'}",
        f"adv_in_verb_chunks={'true' if cfg.adv_in_verb_chunks else 'false'}",
    ]
    return "\n".join(lines) + "\n"


def load_config(path) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
