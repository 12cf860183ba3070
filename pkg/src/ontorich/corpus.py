"""Text corpus management and statistical term extraction.

Term candidates are contiguous within-sentence word n-grams grouped by
their stem key, so inflectional variants of the same term merge into one
candidate. Frequencies follow the absolute-term-frequency and TF-IDF
definitions; TF-IDF uses the natural logarithm (the base only rescales
rankings).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyCorpus
from .stemmer import stem
from .textproc import split_sentences, tokenize


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    body: str
    source: str = "Manual"  # Manual | Feed:<feed id> | Import


@dataclass
class Corpus:
    documents: list = field(default_factory=list)

    def __len__(self):
        return len(self.documents)

    def add(self, doc: Document) -> None:
        if any(d.id == doc.id for d in self.documents):
            raise ValueError(f"duplicate document id {doc.id!r}")
        self.documents.append(doc)

    def ids(self):
        return {d.id for d in self.documents}


def _read_list(path) -> set:
    out = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.add(line.lower())
    return out


def default_stopwords() -> set:
    with resources.as_file(resources.files("ontorich.data") / "stopwords.txt") as p:
        return _read_list(p)


def stem_key_token(surface: str) -> str:
    """Stem of one token for grouping; non-alphabetic tokens group by
    their lowercase surface."""
    low = surface.lower()
    if low.isalpha():
        return stem(low)
    return low


@dataclass
class TermCandidate:
    surface: str
    stem_key: str
    n_i: int
    tf: float
    tfidf: float | None = None
    source_docs: set = field(default_factory=set)
    per_doc_counts: dict = field(default_factory=dict)

    @property
    def word_count(self) -> int:
        return len(self.surface.split(" "))


@dataclass
class ExtractionResult:
    candidates: list
    total_word_tokens: int
    doc_token_totals: dict  # doc id -> word token count


def extract_terms(corpus: Corpus, min_freq: int, max_words: int,
                  stopwords: set | None = None) -> ExtractionResult:
    """Collect n-gram candidates (1..max_words tokens) with corpus
    frequency >= min_freq.

    Occurrences of one key are counted non-overlapping, left to right,
    within a sentence. N-grams with a stopword at either edge are
    dropped.
    """
    if min_freq < 1 or max_words < 1:
        raise ValueError("min_freq and max_words must be >= 1")
    if not corpus.documents:
        raise EmptyCorpus("no documents in corpus")
    if stopwords is None:
        stopwords = default_stopwords()

    counts = {}        # key -> total n_i
    per_doc = {}       # key -> {doc id -> count}
    surfaces = {}      # key -> first seen surface
    doc_totals = {}
    total_tokens = 0

    for doc in corpus.documents:
        doc_tokens = 0
        for sentence in split_sentences(doc.body):
            words = [t for t in sentence.tokens() if t.kind == "Word"]
            doc_tokens += len(words)
            stems = [stem_key_token(t.surface) for t in words]
            lowers = [t.lower for t in words]
            for n in range(1, max_words + 1):
                next_start = {}  # non-overlap per key
                for i in range(len(words) - n + 1):
                    if lowers[i] in stopwords or lowers[i + n - 1] in stopwords:
                        continue
                    key = " ".join(stems[i:i + n])
                    if i < next_start.get(key, 0):
                        continue
                    next_start[key] = i + n
                    counts[key] = counts.get(key, 0) + 1
                    per_doc.setdefault(key, {}).setdefault(doc.id, 0)
                    per_doc[key][doc.id] += 1
                    if key not in surfaces:
                        surfaces[key] = " ".join(t.lower for t in words[i:i + n])
        doc_totals[doc.id] = doc_tokens
        total_tokens += doc_tokens

    candidates = []
    for key, n_i in counts.items():
        if n_i < min_freq:
            continue
        candidates.append(TermCandidate(
            surface=surfaces[key],
            stem_key=key,
            n_i=n_i,
            tf=n_i / total_tokens if total_tokens else 0.0,
            source_docs=set(per_doc[key]),
            per_doc_counts=dict(per_doc[key]),
        ))
    candidates.sort(key=lambda c: (-c.n_i, c.surface))
    return ExtractionResult(candidates, total_tokens, doc_totals)


def tfidf(corpus: Corpus, result: ExtractionResult) -> list:
    """Fill in each candidate's TF-IDF score.

    Per (term, document): tf within the document times ln(|D| / df).
    The candidate-level score is the maximum over its documents;
    per-document scores stay available through per_doc_counts.
    """
    if not corpus.documents:
        raise EmptyCorpus("no documents in corpus")
    n_docs = len(corpus.documents)
    for cand in result.candidates:
        df = len(cand.source_docs)
        idf = math.log(n_docs / df)
        best = 0.0
        for doc_id, count in cand.per_doc_counts.items():
            total = result.doc_token_totals.get(doc_id, 0)
            if total:
                best = max(best, (count / total) * idf)
        cand.tfidf = best
    return result.candidates


# --- persistence --------------------------------------------------------

class CorpusStore:
    """One UTF-8 text file per document plus a tab-separated manifest."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.manifest = self.root / "manifest.tsv"

    def load(self) -> Corpus:
        corpus = Corpus()
        if not self.manifest.exists():
            return corpus
        with open(self.manifest, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                doc_id, title, source = line.split("\t")
                body = (self.root / f"{doc_id}.txt").read_text(encoding="utf-8")
                corpus.add(Document(doc_id, title, body, source))
        return corpus

    def add(self, doc: Document) -> None:
        (self.root / f"{doc.id}.txt").write_text(doc.body, encoding="utf-8")
        with open(self.manifest, "a", encoding="utf-8") as fh:
            fh.write(f"{doc.id}\t{doc.title}\t{doc.source}\n")
