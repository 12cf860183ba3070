import random

import pytest

from ontorich.errors import ParseError, UnknownPrefix
from ontorich.model import XSD, BlankNode, Graph, Iri, Literal, Triple
from ontorich.turtle import parse_turtle, serialize_turtle

NS = "http://example.org/"


def random_graph(rng: random.Random, max_triples: int = 200) -> Graph:
    g = Graph()
    iris = [Iri(f"{NS}r{i}") for i in range(20)]
    preds = [Iri(f"{NS}p{i}") for i in range(8)]
    blanks = [BlankNode(f"b{i}") for i in range(5)]
    datatypes = [None, Iri(XSD + "integer"), Iri(XSD + "string")]
    for _ in range(rng.randint(0, max_triples)):
        subject = rng.choice(iris + blanks)
        predicate = rng.choice(preds)
        roll = rng.random()
        if roll < 0.5:
            obj = rng.choice(iris + blanks)
        else:
            dt = rng.choice(datatypes)
            lang = None
            if dt is None and rng.random() < 0.3:
                lang = rng.choice(["en", "de", "en-GB"])
            lexical = rng.choice(["hello", 'say "hi"', "tab\there", "line\nbreak", "päöü", ""])
            obj = Literal(lexical, dt, lang)
        g.add(Triple(subject, predicate, obj))
    return g


def canonical_triples(graph: Graph):
    """Triple set with blank-node labels normalized by first occurrence in
    sorted order, so isomorphic graphs compare equal."""
    mapping = {}

    def norm(term):
        if isinstance(term, BlankNode):
            if term.label not in mapping:
                mapping[term.label] = f"n{len(mapping)}"
            return ("blank", mapping[term.label])
        return term

    out = set()
    for t in graph.sorted_triples():
        out.add((norm(t.subject), norm(t.predicate), norm(t.object)))
    return out


def test_round_trip_500_random_graphs():
    rng = random.Random(20240817)
    for _ in range(500):
        g = random_graph(rng)
        back = parse_turtle(serialize_turtle(g))
        assert canonical_triples(back) == canonical_triples(g)


def test_prefix_and_sugar():
    text = """
    @prefix ex: <http://example.org/> .
    ex:a a ex:T ; ex:p ex:b , ex:c .
    """
    g = parse_turtle(text)
    a = Iri(NS + "a")
    assert Triple(a, Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), Iri(NS + "T")) in g
    assert Triple(a, Iri(NS + "p"), Iri(NS + "b")) in g
    assert Triple(a, Iri(NS + "p"), Iri(NS + "c")) in g
    assert len(list(g)) == 3


def test_literals():
    text = """
    @prefix ex: <http://example.org/> .
    @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
    ex:a ex:p "plain" .
    ex:a ex:q "typed"^^xsd:string .
    ex:a ex:r "tagged"@en .
    ex:a ex:n 42 .
    ex:a ex:d 3.25 .
    ex:a ex:b true .
    """
    g = parse_turtle(text)
    objs = {t.object for t in g}
    assert Literal("plain") in objs
    assert Literal("typed", Iri(XSD + "string")) in objs
    assert Literal("tagged", None, "en") in objs
    assert Literal("42", Iri(XSD + "integer")) in objs
    assert Literal("3.25", Iri(XSD + "decimal")) in objs
    assert Literal("true", Iri(XSD + "boolean")) in objs


def test_escapes_round_trip():
    g = Graph()
    g.add(Triple(Iri(NS + "a"), Iri(NS + "p"), Literal('a "quote" and \\ and\nnewline\ttab')))
    back = parse_turtle(serialize_turtle(g))
    assert set(back) == set(g)


def test_comment_and_base():
    text = """
    # a comment
    @base <http://example.org/> .
    <a> <p> <b> . # trailing comment
    """
    g = parse_turtle(text)
    assert Triple(Iri(NS + "a"), Iri(NS + "p"), Iri(NS + "b")) in g


def test_unknown_prefix_reports_position():
    with pytest.raises(UnknownPrefix) as exc:
        parse_turtle("nope:a nope:b nope:c .")
    assert exc.value.line == 1


def test_parse_error_on_garbage():
    with pytest.raises(ParseError):
        parse_turtle("@prefix ex: <http://example.org/> .\nex:a ex:b .")


def test_unterminated_string():
    with pytest.raises(ParseError):
        parse_turtle('<http://e/a> <http://e/p> "oops .')


def test_empty_document():
    assert set(parse_turtle("")) == set()
    assert serialize_turtle(Graph()) == ""


def test_serialization_is_deterministic():
    rng = random.Random(7)
    g = random_graph(rng, 60)
    assert serialize_turtle(g) == serialize_turtle(g.copy())


def test_fixture_files_round_trip(fixtures):
    for name in ("micro1.ttl", "it.ttl", "midsize.ttl"):
        g = parse_turtle((fixtures / name).read_text(encoding="utf-8"))
        back = parse_turtle(serialize_turtle(g))
        assert set(back) == set(g)
