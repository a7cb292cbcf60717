"""Part-of-speech tagging by closed-class lexicon and suffix heuristics.

Coarse tags follow the universal scheme (NOUN, VERB, ADP, ...); fine
tags follow the Penn treebank conventions the downstream consumer keys
on, in particular PRP$ and POS for possessives.
"""

from __future__ import annotations

_LEXICON: dict[str, tuple[str, str]] = {}


def _add(pos: str, tag: str, words: str) -> None:
    for word in words.split():
        _LEXICON[word] = (pos, tag)


_add("DET", "DT", "the a an this that these those some any no each every"
     " another either neither both all")
_add("ADP", "IN", "in on at by of for with from into onto near over under"
     " about above below after before between during through against among"
     " within along across behind beyond upon")
_add("AUX", "VBD", "was were had did would should could might")
_add("AUX", "VBZ", "is has does")
_add("AUX", "VBP", "am are have do will shall can may must")
_add("AUX", "VB", "be")
_add("AUX", "VBN", "been")
_add("AUX", "VBG", "being")
_add("PRON", "PRP", "i you he she it we they me him us them myself yourself"
     " himself herself itself ourselves themselves mine yours hers ours"
     " theirs")
_add("PRON", "PRP$", "my your his her its our their")
_add("CCONJ", "CC", "and or but nor yet")
_add("SCONJ", "IN", "because although though while if unless since whereas")
_add("PART", "RB", "not")
_add("PART", "TO", "to")
_add("PART", "POS", "'s")
_add("PART", "RB", "n't")
_add("ADV", "RB", "now then here there very also only just never always"
     " often soon too quite rather well")
_add("ADJ", "JJ", "main other such own same new good great big small old"
     " high low few many several american british german french japanese"
     " chinese")

_ADJ_SUFFIXES = ("al", "ic", "ous", "ive", "able", "ible", "ful", "less",
                 "ish", "ary")


def _suffix_guess(word: str) -> tuple[str, str] | None:
    low = word.casefold()
    if low.endswith("ly") and len(low) > 3:
        return ("ADV", "RB")
    if low.endswith("ing") and len(low) > 4:
        return ("VERB", "VBG")
    if low.endswith("ed") and len(low) > 3:
        return ("VERB", "VBD")
    if any(low.endswith(s) for s in _ADJ_SUFFIXES) and len(low) > 4:
        return ("ADJ", "JJ")
    if low.endswith("s") and not low.endswith("ss") and len(low) > 3:
        return ("NOUN", "NNS")
    return None


def tag_word(word: str, sentence_initial: bool) -> tuple[str, str]:
    """(coarse, fine) tag for one token."""
    if not any(ch.isalnum() for ch in word):
        return ("PUNCT", "." if word in {".", "!", "?"} else word)
    if word.isdigit():
        return ("NUM", "CD")
    hit = _LEXICON.get(word.casefold())
    if hit is not None:
        return hit
    if word[0].isupper():
        if sentence_initial:
            return _suffix_guess(word) or ("PROPN", "NNP")
        return ("PROPN", "NNP")
    return _suffix_guess(word) or ("NOUN", "NN")


def tag_sentence(words: list[str]) -> list[tuple[str, str]]:
    return [tag_word(word, i == 0) for i, word in enumerate(words)]
