"""Deterministic sentence splitting and tokenization with character offsets."""

from __future__ import annotations

import re
from dataclasses import dataclass

# A trailing period belongs to these words; it never ends a sentence.
_ABBREVIATIONS = frozenset({
    "mr.", "mrs.", "ms.", "dr.", "st.", "no.", "vs.", "etc.",
    "inc.", "co.", "corp.", "ltd.", "u.s.", "u.k.", "e.g.", "i.e.",
})

# Possessive and negation clitics split off; otherwise letter runs,
# digit runs, and single symbols. The lazy branch stops a letter run
# right before an n't clitic.
_TOKEN = re.compile(r"[A-Za-z]+?(?=n't)|'s|n't|[A-Za-z]+|\d+|[^\sA-Za-z\d]")


@dataclass(frozen=True)
class RawToken:
    """A surface token with character offsets (end exclusive)."""

    text: str
    start: int
    end: int


def _last_word(text: str) -> str:
    parts = text.split()
    return parts[-1].casefold() if parts else ""


def _is_initial(word: str) -> bool:
    return len(word) == 2 and word[0].isalpha() and word[1] == "."


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Character spans (start, end exclusive) of the sentences in text.

    A run of .!? ends a sentence when followed by whitespace and an
    uppercase letter, digit, or opening quote, or by the end of the
    text, unless the word it closes is a known abbreviation or a
    single-letter initial.
    """
    spans: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] not in ".!?":
            i += 1
            continue
        j = i + 1
        while j < n and text[j] in ".!?":
            j += 1
        k = j
        while k < n and text[k].isspace():
            k += 1
        opens_next = k < n and k > j and (
            text[k].isupper() or text[k].isdigit() or text[k] in "\"'(")
        word = _last_word(text[start:j])
        if (k >= n or opens_next) and word not in _ABBREVIATIONS \
                and not _is_initial(word):
            if text[start:j].strip():
                spans.append((start, j))
            start = k
            i = k
        else:
            i = j
    if start < n and text[start:].strip():
        spans.append((start, n))
    return spans


def tokenize_span(text: str, start: int, end: int) -> list[RawToken]:
    return [RawToken(m.group(), start + m.start(), start + m.end())
            for m in _TOKEN.finditer(text[start:end])]


def tokenize(text: str) -> list[list[RawToken]]:
    """Sentences as lists of tokens; offsets index into the full text."""
    sentences = []
    for start, end in split_sentences(text):
        tokens = tokenize_span(text, start, end)
        if tokens:
            sentences.append(tokens)
    return sentences
