"""Structured ontology view over a triple graph, plus edits and validation.

The snapshot is a value object: edits return a new snapshot with the
backing graph updated consistently, so callers can keep old versions
around for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import CyclicHierarchy, DanglingReference, DuplicateEntity
from .model import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_OBJECT_PROPERTY,
    RDFS_CLASS,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    RDF_TYPE,
    Graph,
    Iri,
    Literal,
    Triple,
)

_T_TYPE = Iri(RDF_TYPE)
_T_SUBCLASS = Iri(RDFS_SUBCLASSOF)
_T_LABEL = Iri(RDFS_LABEL)
_T_DOMAIN = Iri(RDFS_DOMAIN)
_T_RANGE = Iri(RDFS_RANGE)
_T_OWL_CLASS = Iri(OWL_CLASS)
_T_RDFS_CLASS = Iri(RDFS_CLASS)
_T_OBJ_PROP = Iri(OWL_OBJECT_PROPERTY)
_T_DATA_PROP = Iri(OWL_DATATYPE_PROPERTY)


@dataclass(frozen=True)
class OntologySnapshot:
    classes: frozenset = frozenset()
    subclass_edges: frozenset = frozenset()          # (child, parent)
    object_properties: frozenset = frozenset()
    property_domain: tuple = ()                      # ((prop, class), ...)
    property_range: tuple = ()
    attributes: frozenset = frozenset()              # (class, attribute)
    instances: tuple = ()                            # ((instance, frozenset(classes)), ...)
    relation_assertions: frozenset = frozenset()     # (subj, prop, obj)
    attribute_assertions: frozenset = frozenset()    # (instance, attr, Literal)
    labels: tuple = ()                               # ((iri, label), ...)
    graph: Graph = field(default_factory=Graph, compare=False)
    ignored_triples: int = field(default=0, compare=False)

    def instance_map(self) -> dict:
        return dict(self.instances)

    def label_map(self) -> dict:
        return dict(self.labels)

    def domain_map(self) -> dict:
        return dict(self.property_domain)

    def range_map(self) -> dict:
        return dict(self.property_range)

    def label_of(self, iri: Iri) -> str:
        return self.label_map().get(iri, iri.local_name())

    def children_of(self, cls: Iri) -> list:
        return [c for (c, p) in self.subclass_edges if p == cls]

    def parents_of(self, cls: Iri) -> list:
        return [p for (c, p) in self.subclass_edges if c == cls]

    def descendants(self, cls: Iri) -> set:
        """Subtree of cls over the subclass DAG, cls included."""
        seen = {cls}
        stack = [cls]
        children = {}
        for c, p in self.subclass_edges:
            children.setdefault(p, []).append(c)
        while stack:
            for child in children.get(stack.pop(), []):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen

    def ancestors(self, cls: Iri) -> set:
        """Strict ancestors of cls over the subclass DAG."""
        parents = {}
        for c, p in self.subclass_edges:
            parents.setdefault(c, []).append(p)
        seen = set()
        stack = [cls]
        while stack:
            for parent in parents.get(stack.pop(), []):
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)
        return seen


def build_ontology_view(graph: Graph) -> OntologySnapshot:
    """Derive the structured snapshot from raw triples.

    Unrecognized triples stay in the graph and are only counted.
    """
    classes = set()
    subclass_edges = set()
    object_properties = set()
    datatype_properties = set()
    labels = {}

    for t in graph:
        if t.predicate == _T_SUBCLASS:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                classes.add(t.subject)
                classes.add(t.object)
                subclass_edges.add((t.subject, t.object))
        elif t.predicate == _T_TYPE and isinstance(t.subject, Iri):
            if t.object in (_T_OWL_CLASS, _T_RDFS_CLASS):
                classes.add(t.subject)
            elif t.object == _T_OBJ_PROP:
                object_properties.add(t.subject)
            elif t.object == _T_DATA_PROP:
                datatype_properties.add(t.subject)
        elif t.predicate == _T_LABEL and isinstance(t.subject, Iri):
            if isinstance(t.object, Literal):
                labels[t.subject] = t.object.lexical

    prop_domain = {}
    prop_range = {}
    instances = {}
    relation_assertions = set()
    attribute_assertions = set()
    ignored = 0

    for t in graph:
        if t.predicate == _T_SUBCLASS:
            if not (isinstance(t.subject, Iri) and isinstance(t.object, Iri)):
                ignored += 1
            continue
        if t.predicate == _T_LABEL:
            continue
        if t.predicate == _T_DOMAIN:
            if t.subject in object_properties | datatype_properties and isinstance(t.object, Iri):
                prop_domain[t.subject] = t.object
            else:
                ignored += 1
            continue
        if t.predicate == _T_RANGE:
            if t.subject in object_properties | datatype_properties and isinstance(t.object, Iri):
                prop_range[t.subject] = t.object
            else:
                ignored += 1
            continue
        if t.predicate == _T_TYPE:
            if t.object in (_T_OWL_CLASS, _T_RDFS_CLASS, _T_OBJ_PROP, _T_DATA_PROP):
                continue
            if isinstance(t.subject, Iri) and t.object in classes:
                instances.setdefault(t.subject, set()).add(t.object)
            else:
                ignored += 1
            continue
        if t.predicate in object_properties and isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            relation_assertions.add((t.subject, t.predicate, t.object))
            continue
        if t.predicate in datatype_properties and isinstance(t.subject, Iri) and isinstance(t.object, Literal):
            attribute_assertions.add((t.subject, t.predicate, t.object))
            continue
        ignored += 1

    attributes = {(prop_domain[p], p) for p in datatype_properties if p in prop_domain}

    return OntologySnapshot(
        classes=frozenset(classes),
        subclass_edges=frozenset(subclass_edges),
        object_properties=frozenset(object_properties),
        property_domain=tuple(sorted(prop_domain.items())),
        property_range=tuple(sorted(prop_range.items())),
        attributes=frozenset(attributes),
        instances=tuple(sorted((i, frozenset(cs)) for i, cs in instances.items())),
        relation_assertions=frozenset(relation_assertions),
        attribute_assertions=frozenset(attribute_assertions),
        labels=tuple(sorted(labels.items())),
        graph=graph,
        ignored_triples=ignored,
    )


# --- edits -------------------------------------------------------------

@dataclass(frozen=True)
class EditOp:
    kind: str
    subject: Iri = None
    object: Optional[Iri] = None
    prop: Optional[Iri] = None
    literal: Optional[Literal] = None

    _ADD_KINDS = (
        "AddClass", "AddSubclassEdge", "AddObjectProperty", "AddInstance",
        "AddRelationAssertion", "AddAttributeAssertion",
    )

    def inverse(self) -> "EditOp":
        if self.kind.startswith("Add"):
            return replace(self, kind="Remove" + self.kind[3:])
        return replace(self, kind="Add" + self.kind[6:])


def apply_edit(snapshot: OntologySnapshot, edit: EditOp) -> OntologySnapshot:
    """Apply one edit, returning a new snapshot with the graph updated."""
    g = snapshot.graph.copy()
    handler = _EDIT_HANDLERS.get(edit.kind)
    if handler is None:
        raise ValueError(f"unknown edit kind {edit.kind!r}")
    handler(snapshot, edit, g)
    return build_ontology_view(g)


def _require_class(snapshot, iri, what="class"):
    if iri not in snapshot.classes:
        raise DanglingReference(f"{what} {iri} does not exist")


def _add_class(snapshot, edit, g):
    if edit.subject in snapshot.classes:
        raise DuplicateEntity(f"class {edit.subject} already exists")
    if edit.object is not None:
        _require_class(snapshot, edit.object, "parent class")
    g.add(Triple(edit.subject, _T_TYPE, _T_OWL_CLASS))
    if edit.object is not None:
        g.add(Triple(edit.subject, _T_SUBCLASS, edit.object))


def _remove_class(snapshot, edit, g):
    _require_class(snapshot, edit.subject)
    for inst, types in snapshot.instances:
        if edit.subject in types:
            raise DanglingReference(f"class {edit.subject} still has instances")
    g.discard(Triple(edit.subject, _T_TYPE, _T_OWL_CLASS))
    g.discard(Triple(edit.subject, _T_TYPE, _T_RDFS_CLASS))
    for c, p in snapshot.subclass_edges:
        if edit.subject in (c, p):
            g.discard(Triple(c, _T_SUBCLASS, p))


def _add_subclass_edge(snapshot, edit, g):
    _require_class(snapshot, edit.subject, "child class")
    _require_class(snapshot, edit.object, "parent class")
    if (edit.subject, edit.object) in snapshot.subclass_edges:
        raise DuplicateEntity(f"edge {edit.subject} -> {edit.object} already exists")
    g.add(Triple(edit.subject, _T_SUBCLASS, edit.object))


def _remove_subclass_edge(snapshot, edit, g):
    g.discard(Triple(edit.subject, _T_SUBCLASS, edit.object))


def _add_object_property(snapshot, edit, g):
    if edit.subject in snapshot.object_properties:
        raise DuplicateEntity(f"property {edit.subject} already exists")
    g.add(Triple(edit.subject, _T_TYPE, _T_OBJ_PROP))
    if edit.object is not None:
        _require_class(snapshot, edit.object, "domain class")
        g.add(Triple(edit.subject, _T_DOMAIN, edit.object))
    if edit.prop is not None:
        _require_class(snapshot, edit.prop, "range class")
        g.add(Triple(edit.subject, _T_RANGE, edit.prop))


def _remove_object_property(snapshot, edit, g):
    for s, p, o in snapshot.relation_assertions:
        if p == edit.subject:
            raise DanglingReference(f"property {edit.subject} still used in assertions")
    g.discard(Triple(edit.subject, _T_TYPE, _T_OBJ_PROP))
    dom = snapshot.domain_map().get(edit.subject)
    rng = snapshot.range_map().get(edit.subject)
    if dom is not None:
        g.discard(Triple(edit.subject, _T_DOMAIN, dom))
    if rng is not None:
        g.discard(Triple(edit.subject, _T_RANGE, rng))


def _add_instance(snapshot, edit, g):
    _require_class(snapshot, edit.object)
    if edit.object in snapshot.instance_map().get(edit.subject, frozenset()):
        raise DuplicateEntity(f"{edit.subject} already typed {edit.object}")
    g.add(Triple(edit.subject, _T_TYPE, edit.object))


def _remove_instance(snapshot, edit, g):
    types = snapshot.instance_map().get(edit.subject, frozenset())
    if edit.object not in types:
        raise DanglingReference(f"{edit.subject} is not typed {edit.object}")
    if len(types) == 1:
        for s, p, o in snapshot.relation_assertions:
            if edit.subject in (s, o):
                raise DanglingReference(f"instance {edit.subject} still used in assertions")
    g.discard(Triple(edit.subject, _T_TYPE, edit.object))


def _add_relation_assertion(snapshot, edit, g):
    # endpoints may be instances or (for concept-level relations) classes
    known = set(snapshot.instance_map()) | set(snapshot.classes)
    if edit.prop not in snapshot.object_properties:
        raise DanglingReference(f"property {edit.prop} not declared")
    if edit.subject not in known:
        raise DanglingReference(f"entity {edit.subject} does not exist")
    if edit.object not in known:
        raise DanglingReference(f"entity {edit.object} does not exist")
    g.add(Triple(edit.subject, edit.prop, edit.object))


def _remove_relation_assertion(snapshot, edit, g):
    g.discard(Triple(edit.subject, edit.prop, edit.object))


def _add_attribute_assertion(snapshot, edit, g):
    if edit.subject not in snapshot.instance_map():
        raise DanglingReference(f"instance {edit.subject} does not exist")
    g.add(Triple(edit.subject, edit.prop, edit.literal))


def _remove_attribute_assertion(snapshot, edit, g):
    g.discard(Triple(edit.subject, edit.prop, edit.literal))


_EDIT_HANDLERS = {
    "AddClass": _add_class,
    "RemoveClass": _remove_class,
    "AddSubclassEdge": _add_subclass_edge,
    "RemoveSubclassEdge": _remove_subclass_edge,
    "AddObjectProperty": _add_object_property,
    "RemoveObjectProperty": _remove_object_property,
    "AddInstance": _add_instance,
    "RemoveInstance": _remove_instance,
    "AddRelationAssertion": _add_relation_assertion,
    "RemoveRelationAssertion": _remove_relation_assertion,
    "AddAttributeAssertion": _add_attribute_assertion,
    "RemoveAttributeAssertion": _remove_attribute_assertion,
}


def edit_to_dict(edit: EditOp) -> dict:
    d = {"kind": edit.kind}
    if edit.subject is not None:
        d["subject"] = edit.subject.value
    if edit.object is not None:
        d["object"] = edit.object.value
    if edit.prop is not None:
        d["prop"] = edit.prop.value
    if edit.literal is not None:
        d["literal"] = {
            "lexical": edit.literal.lexical,
            "datatype": edit.literal.datatype.value if edit.literal.datatype else None,
            "language": edit.literal.language,
        }
    return d


def edit_from_dict(d: dict) -> EditOp:
    lit = None
    if d.get("literal") is not None:
        raw = d["literal"]
        lit = Literal(
            raw["lexical"],
            Iri(raw["datatype"]) if raw.get("datatype") else None,
            raw.get("language"),
        )
    return EditOp(
        kind=d["kind"],
        subject=Iri(d["subject"]) if d.get("subject") else None,
        object=Iri(d["object"]) if d.get("object") else None,
        prop=Iri(d["prop"]) if d.get("prop") else None,
        literal=lit,
    )


# --- class tree --------------------------------------------------------

@dataclass
class TreeNode:
    iri: Iri
    label: str
    children: list = field(default_factory=list)


def find_subclass_cycle(snapshot: OntologySnapshot):
    """Return one subclass cycle as a list of Iris, or None."""
    children = {}
    for c, p in snapshot.subclass_edges:
        children.setdefault(p, []).append(c)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {c: WHITE for c in snapshot.classes}
    for start in sorted(snapshot.classes):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(children.get(start, [])))]
        color[start] = GREY
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for child in it:
                if color.get(child, BLACK) == GREY:
                    return path[path.index(child):] + [child]
                if color.get(child, BLACK) == WHITE:
                    color[child] = GREY
                    path.append(child)
                    stack.append((child, iter(children.get(child, []))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


def class_tree(snapshot: OntologySnapshot) -> list:
    """Display forest: a class with k parents appears under all k parents."""
    cycle = find_subclass_cycle(snapshot)
    if cycle is not None:
        raise CyclicHierarchy([c.value for c in cycle])
    children = {}
    has_parent = set()
    for c, p in snapshot.subclass_edges:
        children.setdefault(p, []).append(c)
        has_parent.add(c)

    def build(cls):
        node = TreeNode(cls, snapshot.label_of(cls))
        kids = sorted(children.get(cls, []), key=lambda k: (snapshot.label_of(k), k.value))
        node.children = [build(k) for k in kids]
        return node

    roots = sorted(
        (c for c in snapshot.classes if c not in has_parent),
        key=lambda c: (snapshot.label_of(c), c.value),
    )
    return [build(r) for r in roots]


# --- structural validation ---------------------------------------------

@dataclass(frozen=True)
class Issue:
    kind: str
    detail: str


def validate_structure(snapshot: OntologySnapshot) -> list:
    """Structural checks replacing a DL reasoner: cycles, dangling refs,
    undeclared properties, domain/range violations."""
    issues = []

    cycle = find_subclass_cycle(snapshot)
    if cycle is not None:
        issues.append(Issue("SubclassCycle", " -> ".join(c.value for c in cycle)))

    inst = snapshot.instance_map()
    for i, types in snapshot.instances:
        for t in types:
            if t not in snapshot.classes:
                issues.append(Issue("DanglingTypeReference", f"{i} typed by unknown {t}"))

    dom = snapshot.domain_map()
    rng = snapshot.range_map()
    acyclic = cycle is None

    def typed_under(instance, cls):
        types = inst.get(instance, frozenset())
        if cls in types:
            return True
        if not acyclic:
            return True  # cannot decide reliably with a cyclic hierarchy
        sub = snapshot.descendants(cls)
        return any(t in sub for t in types)

    for s, p, o in sorted(snapshot.relation_assertions):
        if p not in snapshot.object_properties:
            issues.append(Issue("UndeclaredPropertyUse", f"{s} {p} {o}"))
            continue
        d = dom.get(p)
        if d is not None and not typed_under(s, d):
            issues.append(Issue("DomainViolation", f"{s} {p} {o}: {s} not typed under {d}"))
        r = rng.get(p)
        if r is not None and not typed_under(o, r):
            issues.append(Issue("RangeViolation", f"{s} {p} {o}: {o} not typed under {r}"))

    return issues
