"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line (visible with -v / -s) naming the
criterion it establishes.
"""

import json
import math
import random
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

import oracle
from ontorich.cli import main
from ontorich.corpus import Corpus, Document, extract_terms, tfidf
from ontorich.lexicon import hyponym_tree, load_lexicon, meronyms
from ontorich.metrics import (
    attribute_richness,
    class_connectivity,
    class_importance,
    class_relationship_richness,
    class_richness,
    cohesion,
    inheritance_richness,
    relationship_richness,
    schema_stats,
)
from ontorich.model import Iri
from ontorich.ontology import build_ontology_view
from ontorich.patterns import copula_extract, hearst_extract
from ontorich.server import create_app
from ontorich.stemmer import stem
from ontorich.textproc import split_sentences
from ontorich.turtle import parse_turtle, serialize_turtle
from ontorich.workspace import Workspace
from test_turtle import canonical_triples, random_graph

IT = "http://it.example.org/"
TOL = 1e-12


def run_cli(root, *args):
    result = CliRunner().invoke(main, ["-w", str(root), *args])
    assert result.exit_code == 0, f"{args}: {result.output}"
    return result.output


def test_criterion_1_metric_oracle_equivalence():
    """>= 200 random snapshots: every metric matches the brute-force
    oracle within 1e-12, in under 10 seconds."""
    rng = random.Random(424242)
    started = time.monotonic()
    checked = 0
    for _ in range(200):
        s = oracle.random_snapshot(rng)
        if not s.classes:
            continue
        checked += 1
        stats = schema_stats(s)
        assert abs(relationship_richness(stats) - oracle.o_rr(s)) <= TOL
        assert abs(inheritance_richness(stats) - oracle.o_ir(s)) <= TOL
        assert abs(attribute_richness(stats) - oracle.o_ar(s)) <= TOL
        assert abs(class_richness(s) - oracle.o_cr(s)) <= TOL
        assert cohesion(s) == oracle.o_cohesion(s)
        for cls in s.classes:
            assert class_connectivity(s, cls) == oracle.o_connectivity(s, cls)
            assert abs(class_relationship_richness(s, cls)
                       - oracle.o_class_rr(s, cls)) <= TOL
            if s.instances:
                assert abs(class_importance(s, cls)
                           - oracle.o_importance(s, cls)) <= TOL
    elapsed = time.monotonic() - started
    assert checked >= 150
    assert elapsed < 10.0
    print(f"\n[PASS] criterion 1: {checked} non-trivial snapshots matched "
          f"the oracle within 1e-12 in {elapsed:.2f}s")


def test_criterion_2_example_fixture_suite(fixtures, it_snapshot, mini_lexicon):
    assert stem("friendships") == "friendship"

    sents = split_sentences("Laptop producers such as Dell, Toshiba")
    got = hearst_extract(sents[0], it_snapshot)
    assert {c.surface for c in got} == {"Dell", "Toshiba"}

    sents = split_sentences("John Doe is a great teacher.")
    got = copula_extract(sents[0], it_snapshot)
    assert [(c.surface, c.concept) for c in got] == [("John Doe", Iri(IT + "Teacher"))]

    assert "processor" in meronyms(mini_lexicon, "computer", "part")
    assert "computer" in meronyms(mini_lexicon, "computer network", "member")
    assert "plastic" in meronyms(mini_lexicon, "keyboard", "substance")

    tree = hyponym_tree(mini_lexicon, "red", 1)
    assert {c.lemmas[0] for c in tree.children} == {
        "scarlet", "vermilion", "carmine", "crimson"}
    print("\n[PASS] criterion 2: example fixture suite passed exactly")


def test_criterion_3_porter_conformance(fixtures):
    total = 0
    with open(fixtures / "porter-vocab.tsv", encoding="utf-8") as fh:
        for line in fh:
            word, expected = line.rstrip("\n").split("\t")
            assert stem(word) == expected, word
            total += 1
    print(f"\n[PASS] criterion 3: 100% agreement on {total} reference vocabulary pairs")


def test_criterion_4_parser_round_trip(fixtures):
    rng = random.Random(13)
    for _ in range(500):
        g = random_graph(rng, 200)
        back = parse_turtle(serialize_turtle(g))
        assert canonical_triples(back) == canonical_triples(g)

    text = (fixtures / "midsize.ttl").read_text(encoding="utf-8")
    g = parse_turtle(text)
    assert set(parse_turtle(serialize_turtle(g))) == set(g)
    s = build_ontology_view(g)
    assert len(s.classes) == 150
    from ontorich.metrics import evaluate

    report = evaluate(s, "midsize")
    assert report.rr is not None
    print("\n[PASS] criterion 4: 500 random graphs round-tripped; "
          "150-class fixture loads, round-trips and evaluates")


def test_criterion_5_tfidf_properties():
    c = Corpus()
    c.add(Document("d0", "a", "Laptops and processors. The laptop market grows."))
    c.add(Document("d1", "b", "Processor caches improved this year."))
    result = extract_terms(c, 1, 1, stopwords=set())
    total = sum(Fraction(t.n_i, result.total_word_tokens)
                for t in result.candidates if t.word_count == 1)
    assert total == Fraction(1)

    tfidf(c, result)
    for t in result.candidates:
        assert t.tfidf >= 0.0
        assert (t.tfidf == 0.0) == (len(t.source_docs) == len(c.documents))

    hand = Corpus()
    hand.add(Document("d0", "a", "apple pie"))
    hand.add(Document("d1", "b", "cherry tart"))
    res = extract_terms(hand, 1, 1, stopwords=set())
    tfidf(hand, res)
    apple = next(t for t in res.candidates if t.surface == "apple")
    assert abs(apple.tfidf - 0.5 * math.log(2)) <= TOL
    print("\n[PASS] criterion 5: tf sums to 1 exactly; tfidf==0 iff df==|D|; "
          "hand case 0.5*ln2 within 1e-12")


def test_criterion_6_performance_envelopes(tmp_path):
    # ~1 MB Turtle document
    lines = ["@prefix big: <http://big.example.org/> ."]
    i = 0
    size = 0
    while size < 1_100_000:
        line = (f'big:C{i} a <http://www.w3.org/2002/07/owl#Class> ; '
                f'<http://www.w3.org/2000/01/rdf-schema#label> "Class number {i}" .')
        lines.append(line)
        lines.append(f"big:i{i} a big:C{i} .")
        size += len(line) + 30
        i += 1
    text = "\n".join(lines)
    assert len(text.encode("utf-8")) >= 1_000_000
    started = time.monotonic()
    snapshot = build_ontology_view(parse_turtle(text))
    parse_elapsed = time.monotonic() - started
    assert len(snapshot.classes) == i
    assert parse_elapsed < 5.0

    # ~100 KB corpus, min_freq=2, max_words=3
    rng = random.Random(5)
    vocab = [f"word{k}" for k in range(400)] + ["laptop", "market", "computer"]
    corpus = Corpus()
    for d in range(20):
        words = []
        while sum(len(w) + 1 for w in words) < 5_200:
            words.append(rng.choice(vocab))
        sentences = []
        for start in range(0, len(words), 12):
            sentences.append(" ".join(words[start:start + 12]).capitalize() + ".")
        corpus.add(Document(f"d{d}", f"doc {d}", " ".join(sentences)))
    total_bytes = sum(len(d.body.encode("utf-8")) for d in corpus.documents)
    assert total_bytes >= 100_000
    started = time.monotonic()
    result = extract_terms(corpus, 2, 3)
    terms_elapsed = time.monotonic() - started
    assert result.candidates
    assert terms_elapsed < 10.0
    print(f"\n[PASS] criterion 6: 1 MB ontology in {parse_elapsed:.2f}s (< 5s); "
          f"{total_bytes // 1000} KB corpus terms in {terms_elapsed:.2f}s (< 10s)")


def test_criterion_7_end_to_end_cli_loop(tmp_path, fixtures):
    root = tmp_path / "ws"
    run_cli(root, "load", str(fixtures / "it.ttl"))
    url = "file://" + str(fixtures / "feed1.xml")
    (root / "feeds.conf").write_text(f"{url}\tit\t3600\n", encoding="utf-8")

    out = run_cli(root, "feeds", "sync")
    assert "new\t3" in out
    out = run_cli(root, "feeds", "import", "it")
    assert len([l for l in out.splitlines() if l.startswith("feed-")]) == 3

    out = run_cli(root, "terms", "--min-freq", "2", "--max-words", "3")
    assert "laptop" in out

    before = json.loads(run_cli(root, "eval", "--json"))["report"]["cr"]

    out = run_cli(root, "hearst")
    cid = out.splitlines()[0].split("\t")[0]
    run_cli(root, "candidates", "accept", cid)

    after_json = json.loads(run_cli(root, "eval", "--json"))
    after = after_json["report"]["cr"]
    # oracle recomputation over the saved ontology file
    snapshot = build_ontology_view(
        parse_turtle((root / "ontology.ttl").read_text(encoding="utf-8")))
    assert after == oracle.o_cr(snapshot)
    assert before == 0.0 and after == pytest.approx(1 / 12)

    out = run_cli(root, "feeds", "sync")
    assert "new\t0" in out
    print("\n[PASS] criterion 7: CLI-only loop; class richness "
          f"{before} -> {after} matches oracle; re-sync reports new=0")


def test_criterion_8_service_contract(tmp_path, fixtures):
    root = tmp_path / "ws"
    run_cli(root, "load", str(fixtures / "it.ttl"))
    client = TestClient(create_app(root))

    # byte identity on the same revision
    http_bytes = client.get("/metrics").text
    cli_bytes = run_cli(root, "eval", "--json")
    assert http_bytes == cli_bytes

    # stale revision mutation -> 409, nothing applied
    rev = json.loads(http_bytes)["revision"]
    r = client.post("/ontology/edits", json={
        "revision": rev - 1,
        "edits": [{"kind": "AddClass", "subject": IT + "Nope"}]})
    assert r.status_code == 409
    assert client.get("/metrics").json()["revision"] == rev

    # accept atomicity via fault injection: log the accept, "crash" before
    # the ontology file write, reopen and observe a consistent replay
    ws = Workspace(root)
    cand = ws.candidate_log.propose("instance", "Dell", IT + "LaptopProducer", "Hearst")
    edits = ws.edits_for_accept(cand)
    ws.candidate_log.mark_accepted(cand.id, edits)  # crash point

    reopened = Workspace(root)
    inst = Iri("http://ontorich.local/ns#Dell")
    assert inst in reopened.snapshot.instance_map()
    assert reopened.candidate_log.get(cand.id).status == "Accepted"
    again = Workspace(root)
    assert len(again.snapshot.instances) == len(reopened.snapshot.instances)
    print("\n[PASS] criterion 8: byte-identical reports, 409 on stale revision, "
          "accept replay is consistent after fault injection")
