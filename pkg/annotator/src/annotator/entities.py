"""Named entity spans from surface rules.

Four passes over each sentence, earlier passes claiming tokens that
later passes must leave alone: dates built around month names,
organizations as capitalized runs ending in a corporate suffix, people
seeded by a first-name gazetteer, and places as capitalized runs after
a locative preposition (extended across comma appositions).
"""

from __future__ import annotations

from dataclasses import dataclass

_MONTHS = frozenset({
    "January", "February", "March", "April", "May", "June", "July",
    "August", "September", "October", "November", "December",
})

_ORG_SUFFIXES = frozenset({
    "Company", "Corporation", "Corp", "Inc", "Ltd", "LLC", "Group",
    "Bank", "University", "Institute", "Agency", "Association", "Motors",
})

_FIRST_NAMES = frozenset({
    "Henry", "John", "James", "George", "William", "Mary", "Elizabeth",
    "Alice", "Robert", "Thomas", "Charles", "Margaret", "Sarah", "Anna",
})

_PLACE_PREPOSITIONS = frozenset({"in", "at", "from", "near", "of", "to"})

_SKIPPED_OPENERS = frozenset({"the", "a", "an"})


@dataclass(frozen=True)
class EntitySpan:
    """Entity over tokens [start, end) of one sentence."""

    label: str
    sent: int
    start: int
    end: int


def _capitalized(word: str) -> bool:
    return word[:1].isalpha() and word[:1].isupper()


def _year(word: str) -> bool:
    return word.isdigit() and len(word) == 4


def _day(word: str) -> bool:
    return word.isdigit() and len(word) <= 2 and 1 <= int(word) <= 31


def _date_spans(words, claimed):
    spans = []
    i = 0
    n = len(words)
    while i < n:
        if claimed[i] or words[i] not in _MONTHS:
            i += 1
            continue
        j = i + 1
        if j < n and not claimed[j] and _day(words[j]):
            j += 1
            if j + 1 < n and words[j] == "," and not claimed[j] \
                    and not claimed[j + 1] and _year(words[j + 1]):
                j += 2
        elif j < n and not claimed[j] and _year(words[j]):
            j += 1
        if j > i + 1:
            spans.append((i, j))
            i = j
        else:
            i += 1
    return spans


def _runs(words, claimed):
    """Maximal runs of unclaimed capitalized tokens."""
    runs = []
    i = 0
    n = len(words)
    while i < n:
        if claimed[i] or not _capitalized(words[i]):
            i += 1
            continue
        j = i
        while j < n and not claimed[j] and _capitalized(words[j]):
            j += 1
        runs.append((i, j))
        i = j
    return runs


def _org_spans(words, claimed):
    spans = []
    for i, j in _runs(words, claimed):
        while i < j - 1 and words[i].casefold() in _SKIPPED_OPENERS:
            i += 1
        if j - i >= 2 and words[j - 1] in _ORG_SUFFIXES:
            spans.append((i, j))
    return spans


def _person_spans(words, claimed):
    spans = []
    i = 0
    n = len(words)
    while i < n:
        if claimed[i] or words[i] not in _FIRST_NAMES:
            i += 1
            continue
        j = i + 1
        while j < n and not claimed[j] and _capitalized(words[j]):
            j += 1
        spans.append((i, j))
        i = j
    return spans


def _place_spans(words, claimed):
    def startable(k):
        return not claimed[k] and _capitalized(words[k]) \
            and words[k] not in _MONTHS

    spans = []
    i = 1
    n = len(words)
    while i < n:
        if not (startable(i)
                and words[i - 1].casefold() in _PLACE_PREPOSITIONS):
            i += 1
            continue
        while True:
            j = i
            while j < n and startable(j):
                j += 1
            spans.append((i, j))
            # Comma apposition names another place: "Dearborn, Michigan".
            if j + 1 < n and words[j] == "," and startable(j + 1):
                i = j + 1
            else:
                break
        i = j + 1
    return spans


def find_entities(sentences: list[list[str]]) -> list[EntitySpan]:
    """Entity spans for tokenized sentences, ordered by position."""
    found = []
    for sent, words in enumerate(sentences):
        claimed = [False] * len(words)

        def claim(spans, label):
            for start, end in spans:
                found.append(EntitySpan(label, sent, start, end))
                for k in range(start, end):
                    claimed[k] = True

        claim(_date_spans(words, claimed), "DATE")
        claim(_org_spans(words, claimed), "ORG")
        claim(_person_spans(words, claimed), "PERSON")
        claim(_place_spans(words, claimed), "GPE")
    return sorted(found, key=lambda s: (s.sent, s.start))
