"""Property-based invariant tests."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from ontorich.metrics import class_richness, cohesion, evaluate
from ontorich.model import Graph, Iri, Triple
from ontorich.ontology import EditOp, apply_edit, build_ontology_view
from ontorich.stemmer import stem
from ontorich.textproc import split_sentences
from ontorich.turtle import parse_turtle, serialize_turtle

lower_words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=15)


@given(lower_words)
def test_stem_never_longer_than_input(word):
    assert len(stem(word)) <= len(word)


@given(lower_words)
def test_stem_is_deterministic(word):
    assert stem(word) == stem(word)


@given(st.text(max_size=300))
@settings(max_examples=200)
def test_sentence_spans_ordered_and_nonoverlapping(text):
    sents = split_sentences(text)
    for s in sents:
        assert text[s.start:s.end] == s.text
    for a, b in zip(sents, sents[1:]):
        assert a.end <= b.start


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_random_snapshot_round_trips(seed):
    s = oracle.random_snapshot(random.Random(seed))
    back = parse_turtle(serialize_turtle(s.graph))
    assert set(back) == set(s.graph)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_class_richness_equals_indicator_sum(seed):
    s = oracle.random_snapshot(random.Random(seed))
    if not s.classes:
        return
    populated = {c for c in s.classes if any(c in types for _, types in s.instances)}
    assert class_richness(s) == len(populated) / len(s.classes)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_adding_relation_never_increases_cohesion(seed):
    rng = random.Random(seed)
    s = oracle.random_snapshot(rng)
    instances = [i for i, _ in s.instances]
    if len(instances) < 2:
        return
    prop = Iri(oracle.NS + "extra")
    g = s.graph.copy()
    g.add(Triple(prop, oracle.T_TYPE, oracle.T_OBJ_PROP))
    s = build_ontology_view(g)
    before = cohesion(s)
    a, b = rng.sample(instances, 2)
    s2 = apply_edit(s, EditOp(
        "AddRelationAssertion", subject=a, prop=prop, object=b))
    assert cohesion(s2) <= before


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_adding_isolated_instance_increments_cohesion(seed):
    s = oracle.random_snapshot(random.Random(seed))
    if not s.classes:
        return
    before = cohesion(s)
    cls = sorted(s.classes)[0]
    s2 = apply_edit(s, EditOp(
        "AddInstance", subject=Iri(oracle.NS + "fresh"), object=cls))
    assert cohesion(s2) == before + 1


def test_importance_decomposes_over_disjoint_subtrees():
    """Single-typed instances in a tree taxonomy: root importance is 1 and
    equals the sum of child-subtree importances plus the direct share."""
    g = Graph()
    root = Iri(oracle.NS + "Root")
    left = Iri(oracle.NS + "Left")
    right = Iri(oracle.NS + "Right")
    for c in (root, left, right):
        g.add(Triple(c, oracle.T_TYPE, oracle.T_CLASS))
    sub = oracle.T_SUBCLASS
    g.add(Triple(left, sub, root))
    g.add(Triple(right, sub, root))
    for i, cls in enumerate([root, left, left, right]):
        g.add(Triple(Iri(f"{oracle.NS}i{i}"), oracle.T_TYPE, cls))
    s = build_ontology_view(g)
    report = evaluate(s, "tree")
    per = report.per_class
    assert per[root.value]["importance"] == 1.0
    direct_share = 1 / 4
    assert per[left.value]["importance"] + per[right.value]["importance"] + direct_share == 1.0
