import pytest

from ontorich.errors import NotAWord
from ontorich.stemmer import stem


def test_friendships():
    assert stem("friendships") == "friendship"


@pytest.mark.parametrize("word,expected", [
    ("caresses", "caress"),
    ("ponies", "poni"),
    ("relational", "relat"),
    ("conditional", "condit"),
    ("hopeful", "hope"),
    ("electricity", "electr"),
    ("adjustable", "adjust"),
    ("activate", "activ"),
    ("probate", "probat"),
    ("controlling", "control"),
    ("rolling", "roll"),
    ("generalization", "gener"),
    ("oscillators", "oscil"),
])
def test_known_pairs(word, expected):
    assert stem(word) == expected


def test_short_words_pass_through():
    assert stem("is") == "is"
    assert stem("as") == "as"
    assert stem("a") == "a"


def test_idempotent_on_common_vocabulary(fixtures):
    # stems of stems must be stable for the terms the workbench groups by
    words = ["running", "relations", "ontologies", "connected", "classes"]
    for w in words:
        once = stem(w)
        assert stem(once) == once


def test_rejects_non_words():
    for bad in ("", "Hello", "a1b", "two words", "hy-phen"):
        with pytest.raises(NotAWord):
            stem(bad)


def test_full_reference_vocabulary(fixtures):
    """100% agreement with the frozen reference vocabulary fixture."""
    mismatches = []
    total = 0
    with open(fixtures / "porter-vocab.tsv", encoding="utf-8") as fh:
        for line in fh:
            word, expected = line.rstrip("\n").split("\t")
            total += 1
            if stem(word) != expected:
                mismatches.append(word)
    assert total > 19000
    assert mismatches == []
