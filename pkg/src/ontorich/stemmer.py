"""Porter suffix-stripping stemmer.

Follows the reference implementation maintained by the algorithm's
author (including its small departures from the 1980 paper: the
bli/logi rules in step 2 and leaving 1- and 2-letter words alone), so
output agrees with the published reference vocabulary.
"""

from __future__ import annotations

from .errors import NotAWord

_VOWELS = "aeiou"

# (suffix, replacement) pairs; order matters where suffixes overlap.
_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("bli", "ble"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _is_cons(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Count of vowel->consonant transitions ([C](VC)^m[V])."""
    m = 0
    prev_cons = True
    started = False
    for i in range(len(stem)):
        cons = _is_cons(stem, i)
        if not cons:
            started = True
        elif started and not prev_cons:
            m += 1
        prev_cons = cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    i = len(word) - 1
    if not (_is_cons(word, i) and not _is_cons(word, i - 1) and _is_cons(word, i - 2)):
        return False
    return word[i] not in "wxy"


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-3] + "i"
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            return word[:-1]
        return word
    if word.endswith("ed") and _has_vowel(word[:-2]):
        base = word[:-2]
    elif word.endswith("ing") and _has_vowel(word[:-3]):
        base = word[:-3]
    else:
        return word
    if base.endswith(("at", "bl", "iz")):
        return base + "e"
    if _double_cons(base):
        if base[-1] not in "lsz":
            return base[:-1]
        return base
    if _measure(base) == 1 and _ends_cvc(base):
        return base + "e"
    return base


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _replace_by_table(word: str, table) -> str:
    for suffix, repl in table:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if _measure(stem) > 0:
                return stem + repl
            return word
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if suffix == "ion" and (not stem or stem[-1] not in "st"):
                return word
            if _measure(stem) > 1:
                return stem
            return word
    return word


def _step5(word: str) -> str:
    # the measure here deliberately spans the word before the e-drop,
    # matching the reference implementation
    m_entry = _measure(word)
    out = word
    if word.endswith("e"):
        if m_entry > 1 or (m_entry == 1 and not _ends_cvc(word[:-1])):
            out = word[:-1]
    if out.endswith("l") and _double_cons(out) and m_entry > 1:
        out = out[:-1]
    return out


def stem(word: str) -> str:
    """Reduce a lowercase alphabetic word to its Porter stem."""
    if not word or not word.isalpha() or word != word.lower():
        raise NotAWord(repr(word))
    if len(word) <= 2:
        return word
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _replace_by_table(word, _STEP2)
    word = _replace_by_table(word, _STEP3)
    word = _step4(word)
    word = _step5(word)
    return word
