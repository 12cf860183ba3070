"""Tokenization and sentence splitting."""

from __future__ import annotations

import re
from dataclasses import dataclass

_WORD_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*", re.UNICODE)
_TOKEN_RE = re.compile(
    r"(?P<word>[^\W\d_]+(?:['’-][^\W\d_]+)*)|(?P<number>\d+)|(?P<punct>\S)",
    re.UNICODE,
)

DEFAULT_ABBREVIATIONS = (
    "e.g.", "i.e.", "etc.", "cf.", "vs.", "dr.", "mr.", "mrs.", "ms.",
    "prof.", "st.", "no.", "fig.", "al.",
)


@dataclass(frozen=True)
class Token:
    surface: str
    position: int
    kind: str  # Word | Number | Punct

    @property
    def lower(self) -> str:
        return self.surface.lower()


def tokenize(text: str) -> list:
    """Word tokens are letter runs with internal hyphens/apostrophes,
    numbers are digit runs, anything else non-space is a Punct token."""
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        tokens.append(Token(m.group(), m.start(), kind.capitalize()))
    return tokens


@dataclass(frozen=True)
class Sentence:
    text: str
    start: int
    end: int

    def tokens(self) -> list:
        return [
            Token(t.surface, t.position + self.start, t.kind)
            for t in tokenize(self.text)
        ]


def _is_abbreviation(text: str, dot_pos: int, abbreviations) -> bool:
    # single letter followed by a dot never ends a sentence ("A. Smith")
    i = dot_pos - 1
    start = i
    while start >= 0 and text[start].isalpha():
        start -= 1
    word_len = i - start
    if word_len == 1:
        return True
    for abbr in abbreviations:
        if dot_pos - len(abbr) + 1 < 0:
            continue
        if text[dot_pos - len(abbr) + 1:dot_pos + 1].lower() == abbr:
            return True
    return False


def split_sentences(text: str, abbreviations=DEFAULT_ABBREVIATIONS) -> list:
    """Split on ./!/? followed by whitespace and an uppercase letter or
    digit (or end of text), guarding known abbreviations."""
    boundaries = []
    n = len(text)
    for i, c in enumerate(text):
        if c not in ".!?":
            continue
        j = i + 1
        while j < n and text[j] in ".!?\"')]":
            j += 1
        if j < n and not text[j].isspace():
            continue
        k = j
        while k < n and text[k].isspace():
            k += 1
        if k < n and not (text[k].isupper() or text[k].isdigit()):
            continue
        if c == "." and j == i + 1 and _is_abbreviation(text, i, abbreviations):
            continue
        boundaries.append(j)
    sentences = []
    pos = 0
    for b in boundaries + [n]:
        chunk = text[pos:b]
        stripped = chunk.strip()
        if stripped:
            start = pos + len(chunk) - len(chunk.lstrip())
            sentences.append(Sentence(stripped, start, start + len(stripped)))
        pos = b
    return sentences
