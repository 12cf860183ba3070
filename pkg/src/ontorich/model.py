"""RDF term and graph model.

Terms are immutable value objects; a Graph is a set of triples plus the
prefix table seen while parsing. Adding a duplicate triple is a no-op.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"

RDF_TYPE = RDF + "type"
RDFS_SUBCLASSOF = RDFS + "subClassOf"
RDFS_LABEL = RDFS + "label"
RDFS_DOMAIN = RDFS + "domain"
RDFS_RANGE = RDFS + "range"
OWL_CLASS = OWL + "Class"
RDFS_CLASS = RDFS + "Class"
OWL_OBJECT_PROPERTY = OWL + "ObjectProperty"
OWL_DATATYPE_PROPERTY = OWL + "DatatypeProperty"


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        v = self.value
        if not v or ":" not in v or any(c.isspace() for c in v):
            raise ValueError(f"not an absolute IRI: {v!r}")

    def local_name(self) -> str:
        v = self.value
        for sep in ("#", "/"):
            if sep in v:
                tail = v.rsplit(sep, 1)[1]
                if tail:
                    return tail
        return v

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __str__(self):
        return "_:" + self.label


@dataclass(frozen=True, order=True)
class Literal:
    lexical: str
    datatype: Optional[Iri] = None
    language: Optional[str] = None

    def __str__(self):
        out = '"%s"' % self.lexical
        if self.language:
            out += "@" + self.language
        elif self.datatype:
            out += "^^<%s>" % self.datatype.value
        return out


Subject = Union[Iri, BlankNode]
Object = Union[Iri, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Subject
    predicate: Iri
    object: Object

    def sort_key(self):
        return (_term_key(self.subject), _term_key(self.predicate), _term_key(self.object))


def _term_key(term):
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype.value if term.datatype else "", term.language or "")


@dataclass
class Graph:
    triples: set[Triple] = field(default_factory=set)
    prefixes: dict[str, str] = field(default_factory=dict)

    def add(self, triple: Triple) -> None:
        self.triples.add(triple)

    def discard(self, triple: Triple) -> None:
        self.triples.discard(triple)

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, triple):
        return triple in self.triples

    def copy(self) -> "Graph":
        return Graph(set(self.triples), dict(self.prefixes))

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=Triple.sort_key)
