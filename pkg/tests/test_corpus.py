import math
from fractions import Fraction

import pytest

from ontorich.corpus import (
    Corpus,
    CorpusStore,
    Document,
    default_stopwords,
    extract_terms,
    tfidf,
)
from ontorich.errors import EmptyCorpus


def make_corpus(*bodies):
    c = Corpus()
    for i, body in enumerate(bodies):
        c.add(Document(f"d{i}", f"doc {i}", body))
    return c


def test_empty_corpus_raises():
    with pytest.raises(EmptyCorpus):
        extract_terms(Corpus(), 1, 1)


def test_min_freq_filter():
    c = make_corpus("apple apple banana")
    result = extract_terms(c, 2, 1, stopwords=set())
    assert [t.surface for t in result.candidates] == ["apple"]


def test_stemming_groups_variants():
    c = make_corpus("connection connections connected connecting")
    result = extract_terms(c, 2, 1, stopwords=set())
    assert len(result.candidates) == 1
    cand = result.candidates[0]
    assert cand.n_i == 4
    assert cand.surface == "connection"  # first surface seen wins


def test_ngrams_respect_sentence_boundaries():
    c = make_corpus("Big apple. Big apple.")
    result = extract_terms(c, 2, 2, stopwords=set())
    surfaces = {t.surface for t in result.candidates}
    assert "big apple" in surfaces
    assert not any("apple big" in s for s in surfaces)


def test_edge_stopwords_excluded():
    c = make_corpus("the market rose and the market rose")
    result = extract_terms(c, 2, 2)
    surfaces = {t.surface for t in result.candidates}
    assert "market" in surfaces
    assert all(not s.startswith("the ") and not s.endswith(" the") for s in surfaces)


def test_nonoverlapping_counting():
    # "a a a a" contains 3 sliding bigrams "a a" but only 2 disjoint ones
    c = make_corpus("zap zap zap zap")
    result = extract_terms(c, 1, 2, stopwords=set())
    bigram = next(t for t in result.candidates if t.word_count == 2)
    assert bigram.n_i == 2


def test_unigram_tf_sums_to_one_exactly():
    c = make_corpus(
        "Laptops are shipped. The laptop market grows quickly.",
        "Processors and processor caches improved.",
    )
    result = extract_terms(c, 1, 1, stopwords=set())
    total = sum(
        Fraction(t.n_i, result.total_word_tokens)
        for t in result.candidates if t.word_count == 1)
    assert total == Fraction(1)


def test_postcondition_filters():
    c = make_corpus("alpha beta gamma alpha beta gamma alpha")
    result = extract_terms(c, 2, 3, stopwords=set())
    for t in result.candidates:
        assert t.n_i >= 2
        assert t.word_count <= 3


def test_ranking_by_count_then_surface():
    c = make_corpus("bb bb aa aa cc")
    result = extract_terms(c, 1, 1, stopwords=set())
    assert [t.surface for t in result.candidates][:3] == ["aa", "bb", "cc"]


# --- tfidf --------------------------------------------------------------


def test_tfidf_zero_for_single_document():
    c = make_corpus("apple banana apple")
    result = extract_terms(c, 1, 1, stopwords=set())
    tfidf(c, result)
    assert all(t.tfidf == 0.0 for t in result.candidates)


def test_tfidf_zero_iff_in_all_documents():
    c = make_corpus("apple banana", "apple cherry")
    result = extract_terms(c, 1, 1, stopwords=set())
    tfidf(c, result)
    for t in result.candidates:
        assert t.tfidf >= 0.0
        if len(t.source_docs) == 2:
            assert t.tfidf == 0.0
        else:
            assert t.tfidf > 0.0


def test_tfidf_hand_case_half_ln2():
    # |D|=2; "apple" only in doc 1 with within-document tf 0.5
    c = make_corpus("apple pie", "cherry tart")
    result = extract_terms(c, 1, 1, stopwords=set())
    tfidf(c, result)
    apple = next(t for t in result.candidates if t.surface == "apple")
    assert apple.tfidf == pytest.approx(0.5 * math.log(2), abs=1e-12)


def test_default_stopwords_loaded():
    sw = default_stopwords()
    assert {"the", "and", "of"} <= sw


# --- store --------------------------------------------------------------


def test_corpus_store_round_trip(tmp_path):
    store = CorpusStore(tmp_path / "corpus")
    store.add(Document("a", "Title A", "Body text A.", "Manual"))
    store.add(Document("b", "Title B", "Body text B.", "Feed:it"))
    loaded = store.load()
    assert {d.id for d in loaded.documents} == {"a", "b"}
    doc_b = next(d for d in loaded.documents if d.id == "b")
    assert doc_b.body == "Body text B."
    assert doc_b.source == "Feed:it"


def test_duplicate_document_id_rejected():
    c = make_corpus("x")
    with pytest.raises(ValueError):
        c.add(Document("d0", "again", "y"))
