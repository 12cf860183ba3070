from ontorich.textproc import Sentence, split_sentences, tokenize


def test_tokenize_kinds():
    tokens = tokenize("Dell shipped 12 laptops, didn't it?")
    kinds = [(t.surface, t.kind) for t in tokens]
    assert ("Dell", "Word") in kinds
    assert ("12", "Number") in kinds
    assert (",", "Punct") in kinds
    assert ("didn't", "Word") in kinds
    assert ("?", "Punct") in kinds


def test_tokenize_positions():
    text = "ab  cd"
    tokens = tokenize(text)
    for t in tokens:
        assert text[t.position:t.position + len(t.surface)] == t.surface


def test_hyphenated_words_stay_together():
    tokens = tokenize("state-of-the-art design")
    assert tokens[0].surface == "state-of-the-art"


def test_split_basic():
    sents = split_sentences("First sentence. Second one! Third?")
    assert [s.text for s in sents] == ["First sentence.", "Second one!", "Third?"]


def test_split_requires_capital_or_digit():
    sents = split_sentences("It rose 3.5 percent. good news came later.")
    # "good" is lowercase, so the period does not split
    assert len(sents) == 1


def test_split_guards_abbreviations():
    sents = split_sentences("Dr. Smith met A. Jones. They talked e.g. about IT.")
    assert len(sents) == 2
    assert sents[0].text == "Dr. Smith met A. Jones."


def test_split_digit_start():
    sents = split_sentences("Sales fell. 12 analysts disagreed.")
    assert len(sents) == 2


def test_sentence_offsets_are_absolute():
    text = "One here.  Two there."
    sents = split_sentences(text)
    for s in sents:
        assert text[s.start:s.end] == s.text
        for t in s.tokens():
            assert text[t.position:t.position + len(t.surface)] == t.surface


def test_empty_and_whitespace():
    assert split_sentences("") == []
    assert split_sentences("  \n ") == []


def test_sentence_tokens():
    s = Sentence("Hello world.", 0, 12)
    assert [t.surface for t in s.tokens()] == ["Hello", "world", "."]
