"""Instance-candidate extraction from sentences.

Four rule families: Hearst-style cue templates, copula ("X is a Y")
statements, capitalization/date heuristics, and user-defined anchor
patterns. All of them are plain token rules; there is no statistical
tagger behind them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import InvalidPattern
from .stemmer import stem
from .lexicon import label_to_lemma
from .ontology import OntologySnapshot
from .textproc import Sentence

# closed list of auxiliaries/copulas; list parsing stops at these
_VERBISH = {
    "is", "are", "was", "were", "be", "been", "being", "am",
    "has", "have", "had", "do", "does", "did",
    "will", "would", "can", "could", "may", "might", "shall", "should", "must",
}

_COPULAS = ("is", "are", "was", "were")
_DETERMINERS = {"a", "an", "the"}
_PREPOSITIONS = {
    "of", "in", "on", "at", "for", "with", "from", "by", "to", "as",
    "into", "over", "under", "about",
}

_RELATIVE_DATES = {"today", "yesterday", "tomorrow"}


@dataclass
class InstanceCandidate:
    surface: str
    concept: object  # Iri when bound to a class, str for a raw noun phrase, None
    rule: str
    span: tuple  # (start, end) within the source text
    status: str = "Proposed"


def _stem_or_self(word: str) -> str:
    low = word.lower()
    return stem(low) if low.isalpha() else low


def _class_head_stems(snapshot: OntologySnapshot) -> list:
    """(head stem, class Iri) pairs, deterministic order."""
    pairs = []
    for cls in sorted(snapshot.classes):
        lemma = label_to_lemma(snapshot.label_of(cls))
        if not lemma:
            continue
        head = lemma.split(" ")[-1]
        pairs.append((_stem_or_self(head), cls))
    return pairs


def _match_class(head_word: str, head_stems) -> object:
    target = _stem_or_self(head_word)
    for head, cls in head_stems:
        if head == target:
            return cls
    return None


def _is_cap(token) -> bool:
    return token.kind == "Word" and token.surface[0].isupper()


def _token_span(tokens, i, j):
    return (tokens[i].position, tokens[j].position + len(tokens[j].surface))


def _collect_list(tokens, start):
    """Parse a comma/and/or separated candidate list starting at `start`.

    Items are runs of word/number tokens; parsing stops at the first
    verb-like token or sentence end. Returns a list of (i, j) index
    ranges.
    """
    items = []
    i = start
    current = None
    while i < len(tokens):
        tok = tokens[i]
        low = tok.lower
        if tok.kind == "Punct":
            if tok.surface == ",":
                if current:
                    items.append(current)
                    current = None
                i += 1
                continue
            break
        if low in _VERBISH:
            break
        if low in ("and", "or"):
            if current:
                items.append(current)
                current = None
            i += 1
            continue
        current = (current[0], i) if current else (i, i)
        i += 1
    if current:
        items.append(current)
    return items


def _np_before(tokens, end):
    """Run of word tokens immediately before index `end` (exclusive)."""
    j = end - 1
    while j >= 0 and tokens[j].kind == "Punct" and tokens[j].surface == ",":
        j -= 1
    i = j
    while i >= 0 and tokens[i].kind == "Word" and tokens[i].lower not in _VERBISH:
        i -= 1
    if i == j:
        return None
    return (i + 1, j)


def hearst_extract(sentence: Sentence, snapshot: OntologySnapshot) -> list:
    """Cue templates: 'NP such as LIST', 'NP, especially LIST',
    'NP, for example LIST', 'LIST or other NP'."""
    tokens = sentence.tokens()
    lows = [t.lower for t in tokens]
    head_stems = _class_head_stems(snapshot)
    out = []

    def emit(np_range, list_items):
        if np_range is None or not list_items:
            return
        np_tokens = tokens[np_range[0]:np_range[1] + 1]
        concept = _match_class(np_tokens[-1].surface, head_stems)
        if concept is None:
            concept = " ".join(t.surface for t in np_tokens)
        for i, j in list_items:
            surface = " ".join(t.surface for t in tokens[i:j + 1])
            out.append(InstanceCandidate(
                surface, concept, "Hearst", _token_span(tokens, i, j)))

    i = 0
    while i < len(tokens):
        if lows[i] == "such" and i + 1 < len(tokens) and lows[i + 1] == "as":
            emit(_np_before(tokens, i), _collect_list(tokens, i + 2))
            i += 2
            continue
        if lows[i] in ("especially",):
            emit(_np_before(tokens, i), _collect_list(tokens, i + 1))
            i += 1
            continue
        if lows[i] == "for" and i + 1 < len(tokens) and lows[i + 1] == "example":
            start = i + 2
            if start < len(tokens) and tokens[start].surface == ",":
                start += 1
            emit(_np_before(tokens, i), _collect_list(tokens, start))
            i += 2
            continue
        if lows[i] == "or" and i + 1 < len(tokens) and lows[i + 1] == "other":
            j = i + 2
            k = j
            while k < len(tokens) and tokens[k].kind == "Word" and lows[k] not in _VERBISH:
                k += 1
            if k > j:
                emit((j, k - 1), _collect_list_before(tokens, i))
            i += 2
            continue
        i += 1
    return out


def _collect_list_before(tokens, end):
    """List items to the left of index `end`, in document order."""
    i = end - 1
    items = []
    current = None
    while i >= 0:
        tok = tokens[i]
        low = tok.lower
        if tok.kind == "Punct":
            if tok.surface == ",":
                if current:
                    items.append(current)
                    current = None
                i -= 1
                continue
            break
        if low in _VERBISH:
            break
        if low in ("and", "or"):
            if current:
                items.append(current)
                current = None
            i -= 1
            continue
        current = (i, current[1]) if current else (i, i)
        i -= 1
    if current:
        items.append(current)
    items.reverse()
    return items


def copula_extract(sentence: Sentence, snapshot: OntologySnapshot) -> list:
    """'SUBJ is (a|an|the)? ... HEAD' with SUBJ a capitalized run and HEAD
    the last noun-phrase word; emitted only when HEAD's stem matches a
    class label in the snapshot."""
    tokens = sentence.tokens()
    head_stems = _class_head_stems(snapshot)
    out = []
    for i, tok in enumerate(tokens):
        if tok.lower not in _COPULAS:
            continue
        j = i - 1
        while j >= 0 and _is_cap(tokens[j]):
            j -= 1
        if j == i - 1:
            continue
        subj_range = (j + 1, i - 1)
        k = i + 1
        if k < len(tokens) and tokens[k].lower in _DETERMINERS:
            k += 1
        head = None
        while k < len(tokens):
            t = tokens[k]
            if t.kind != "Word" or t.lower in _PREPOSITIONS or t.lower in _VERBISH:
                break
            head = k
            k += 1
        if head is None:
            continue
        concept = _match_class(tokens[head].surface, head_stems)
        if concept is None:
            continue
        surface = " ".join(t.surface for t in tokens[subj_range[0]:subj_range[1] + 1])
        out.append(InstanceCandidate(
            surface, concept, "Copula", _token_span(tokens, *subj_range)))
    return out


def _read_gazetteer(name) -> set:
    with resources.as_file(resources.files("ontorich.data") / "gazetteers" / name) as p:
        out = set()
        for line in p.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                out.add(line.lower())
        return out


def entity_heuristics(sentence: Sentence,
                      weekdays: set | None = None,
                      months: set | None = None) -> list:
    """Proper-name runs plus gazetteer/shape-based date references.

    Candidates are tagged with their heuristic kind and never bound to a
    concept automatically.
    """
    if weekdays is None:
        weekdays = _read_gazetteer("weekdays.txt")
    if months is None:
        months = _read_gazetteer("months.txt")
    tokens = sentence.tokens()
    lows = [t.lower for t in tokens]
    out = []
    consumed = set()

    # date shapes: "12 July 2025" and "July 12, 2025"
    for i in range(len(tokens)):
        if i + 2 < len(tokens) and tokens[i].kind == "Number" and lows[i + 1] in months \
                and tokens[i + 2].kind == "Number":
            out.append(InstanceCandidate(
                " ".join(t.surface for t in tokens[i:i + 3]), None, "Date",
                _token_span(tokens, i, i + 2)))
            consumed.update((i, i + 1, i + 2))
        elif lows[i] in months and i + 2 < len(tokens) and tokens[i + 1].kind == "Number" \
                and tokens[i + 2].surface == "," and i + 3 < len(tokens) \
                and tokens[i + 3].kind == "Number":
            out.append(InstanceCandidate(
                " ".join(t.surface for t in tokens[i:i + 4]), None, "Date",
                _token_span(tokens, i, i + 3)))
            consumed.update((i, i + 1, i + 2, i + 3))

    date_words = weekdays | months | _RELATIVE_DATES
    for i, tok in enumerate(tokens):
        if i in consumed:
            continue
        if lows[i] in date_words:
            out.append(InstanceCandidate(tok.surface, None, "Date",
                                         _token_span(tokens, i, i)))
            consumed.add(i)

    # proper-name runs; a run at sentence start needs two words unless the
    # first token is an all-caps acronym
    i = 0
    while i < len(tokens):
        if i in consumed or not _is_cap(tokens[i]):
            i += 1
            continue
        j = i
        while j + 1 < len(tokens) and j + 1 not in consumed and _is_cap(tokens[j + 1]):
            j += 1
        run_len = j - i + 1
        at_start = i == 0
        acronym = tokens[i].surface.isupper() and len(tokens[i].surface) >= 2
        if not at_start or run_len >= 2 or acronym:
            out.append(InstanceCandidate(
                " ".join(t.surface for t in tokens[i:j + 1]), None, "ProperName",
                _token_span(tokens, i, j)))
        i = j + 1

    out.sort(key=lambda c: c.span)
    return out


# --- user-defined patterns ---------------------------------------------

@dataclass(frozen=True)
class PatternRule:
    name: str
    anchor: str
    capture: str  # capitalized | number | capital_or_number | regex:<expr>
    direction: str  # after | before
    max_gap: int = 0

    def __post_init__(self):
        if not self.anchor:
            raise InvalidPattern("anchor must be non-empty")
        if self.direction not in ("after", "before"):
            raise InvalidPattern(f"bad direction {self.direction!r}")
        if self.max_gap < 0:
            raise InvalidPattern("max_gap must be >= 0")
        if self.capture.startswith("regex:"):
            try:
                re.compile(self.capture[len("regex:"):])
            except re.error as exc:
                raise InvalidPattern(f"bad regex: {exc}") from exc
        elif self.capture not in ("capitalized", "number", "capital_or_number"):
            raise InvalidPattern(f"bad capture class {self.capture!r}")

    def matches_capture(self, token) -> bool:
        if self.capture == "capitalized":
            return _is_cap(token)
        if self.capture == "number":
            return token.kind == "Number"
        if self.capture == "capital_or_number":
            return _is_cap(token) or token.kind == "Number"
        return re.fullmatch(self.capture[len("regex:"):], token.surface) is not None


def load_pattern_rules(path) -> list:
    """One rule per line: name<TAB>anchor<TAB>capture<TAB>direction<TAB>max_gap."""
    rules = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise InvalidPattern(f"line {lineno}: expected 5 tab-separated fields")
            name, anchor, capture, direction, gap = parts
            try:
                max_gap = int(gap)
            except ValueError as exc:
                raise InvalidPattern(f"line {lineno}: bad max_gap {gap!r}") from exc
            rules.append(PatternRule(name, anchor, capture, direction, max_gap))
    return rules


def custom_extract(corpus, rule: PatternRule) -> list:
    """Apply one user-defined rule to every sentence of the corpus.

    Non-overlapping left-to-right matching; results deduplicated by
    (surface, rule name).
    """
    from .textproc import split_sentences

    anchor_tokens = rule.anchor.split()
    out = []
    seen = set()
    for doc in corpus.documents:
        for sentence in split_sentences(doc.body):
            tokens = sentence.tokens()
            i = 0
            while i <= len(tokens) - len(anchor_tokens):
                window = [t.surface for t in tokens[i:i + len(anchor_tokens)]]
                if window != anchor_tokens:
                    i += 1
                    continue
                cap = None
                if rule.direction == "after":
                    start = i + len(anchor_tokens)
                    for off in range(rule.max_gap + 1):
                        k = start + off
                        if k >= len(tokens):
                            break
                        if rule.matches_capture(tokens[k]):
                            cap = k
                            break
                else:
                    for off in range(rule.max_gap + 1):
                        k = i - 1 - off
                        if k < 0:
                            break
                        if rule.matches_capture(tokens[k]):
                            cap = k
                            break
                if cap is None:
                    i += len(anchor_tokens)
                    continue
                key = (tokens[cap].surface, rule.name)
                if key not in seen:
                    seen.add(key)
                    out.append(InstanceCandidate(
                        tokens[cap].surface, None, rule.name,
                        _token_span(tokens, cap, cap)))
                i = max(cap, i + len(anchor_tokens) - 1) + 1
    return out
