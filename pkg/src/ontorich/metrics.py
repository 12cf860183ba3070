"""Schema- and knowledge-base-level quality metrics.

Schema metrics look only at the class/property design; knowledge-base
metrics look at how instances populate it. Undefined ratios (empty
ontology, empty knowledge base) are reported as None plus a reason, never
NaN.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyKnowledgeBase, EmptyOntology, UnknownClass
from .model import Iri
from .ontology import OntologySnapshot


@dataclass(frozen=True)
class SchemaStats:
    P: int  # non-inheritance (object property) schema relationships
    H: int  # inheritance relationships
    C: int  # classes
    S: int  # subclass edges (equals H by construction)
    att: int  # (class, attribute) declarations

    def __post_init__(self):
        if min(self.P, self.H, self.C, self.S, self.att) < 0:
            raise ValueError("counts must be non-negative")
        if self.S != self.H:
            raise ValueError("S and H must agree")


def schema_stats(snapshot: OntologySnapshot) -> SchemaStats:
    h = len(snapshot.subclass_edges)
    return SchemaStats(
        P=len(snapshot.object_properties),
        H=h,
        C=len(snapshot.classes),
        S=h,
        att=len(snapshot.attributes),
    )


def relationship_richness(stats: SchemaStats) -> float:
    """Share of non-inheritance relationships among all schema relationships.

    Returns 0 for a schema with no relationships at all.
    """
    total = stats.H + stats.P
    if total == 0:
        return 0.0
    return stats.P / total


def inheritance_richness(stats: SchemaStats) -> float:
    """Average number of subclasses per class."""
    if stats.C == 0:
        raise EmptyOntology("no classes")
    return stats.S / stats.C


def attribute_richness(stats: SchemaStats) -> float:
    """Average number of attribute declarations per class."""
    if stats.C == 0:
        raise EmptyOntology("no classes")
    return stats.att / stats.C


def class_richness(snapshot: OntologySnapshot) -> float:
    """Share of classes that have at least one direct instance."""
    if not snapshot.classes:
        raise EmptyOntology("no classes")
    populated = set()
    for _, types in snapshot.instances:
        populated.update(types)
    nonempty = sum(1 for c in snapshot.classes if c in populated)
    return nonempty / len(snapshot.classes)


def class_connectivity(snapshot: OntologySnapshot, cls: Iri) -> int:
    """Number of relation assertions linking direct instances of cls with
    instances of other classes."""
    if cls not in snapshot.classes:
        raise UnknownClass(str(cls))
    inst = snapshot.instance_map()
    direct = {i for i, types in inst.items() if cls in types}
    count = 0
    for s, _, o in snapshot.relation_assertions:
        s_in = s in direct
        o_in = o in direct
        if s_in == o_in:
            continue
        other = o if s_in else s
        if other in inst:
            count += 1
    return count


def class_importance(snapshot: OntologySnapshot, cls: Iri) -> float:
    """Share of all instances that fall in the subclass subtree of cls."""
    if cls not in snapshot.classes:
        raise UnknownClass(str(cls))
    inst = snapshot.instance_map()
    total = len(inst)
    if total == 0:
        raise EmptyKnowledgeBase("no instances")
    subtree = snapshot.descendants(cls)
    members = sum(1 for _, types in inst.items() if types & subtree)
    return members / total


def cohesion(snapshot: OntologySnapshot) -> int:
    """Connected components of the instance graph (relation assertions as
    undirected edges); isolated instances are singleton components."""
    inst = snapshot.instance_map()
    parent = {i: i for i in inst}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, _, o in snapshot.relation_assertions:
        if s in parent and o in parent:
            rs, ro = find(s), find(o)
            if rs != ro:
                parent[rs] = ro
    return len({find(i) for i in parent})


def class_relationship_richness(snapshot: OntologySnapshot, cls: Iri) -> float:
    """Share of the properties applicable to cls (declared domain at cls or
    an ancestor) actually used by its direct instances."""
    if cls not in snapshot.classes:
        raise UnknownClass(str(cls))
    scope = {cls} | snapshot.ancestors(cls)
    applicable = {p for p, d in snapshot.property_domain if d in scope}
    if not applicable:
        return 0.0
    direct = {i for i, types in snapshot.instance_map().items() if cls in types}
    used = {p for s, p, _ in snapshot.relation_assertions if s in direct}
    return len(used & applicable) / len(applicable)


@dataclass(frozen=True)
class KbStats:
    nonempty_classes: int
    total_classes: int
    total_instances: int
    components: int


def kb_stats(snapshot: OntologySnapshot) -> KbStats:
    populated = set()
    for _, types in snapshot.instances:
        populated.update(types)
    return KbStats(
        nonempty_classes=sum(1 for c in snapshot.classes if c in populated),
        total_classes=len(snapshot.classes),
        total_instances=len(snapshot.instances),
        components=cohesion(snapshot),
    )


@dataclass
class MetricReport:
    ontology_id: str
    timestamp: int
    rr: float | None
    ir: float | None
    ar: float | None
    cr: float | None
    cohesion: int
    per_class: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    undefined_reason: dict = field(default_factory=dict)

    SERIES_METRICS = ("rr", "ir", "ar", "cr", "cohesion")

    def metric_value(self, name: str):
        if name not in self.SERIES_METRICS:
            raise KeyError(name)
        return getattr(self, name)

    def to_dict(self) -> dict:
        return {
            "ontology_id": self.ontology_id,
            "timestamp": self.timestamp,
            "rr": self.rr,
            "ir": self.ir,
            "ar": self.ar,
            "cr": self.cr,
            "cohesion": self.cohesion,
            "per_class": {
                iri: dict(vals) for iri, vals in sorted(self.per_class.items())
            },
            "counts": dict(self.counts),
            "undefined_reason": dict(self.undefined_reason),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        return cls(
            ontology_id=d["ontology_id"],
            timestamp=d["timestamp"],
            rr=d["rr"],
            ir=d["ir"],
            ar=d["ar"],
            cr=d["cr"],
            cohesion=d["cohesion"],
            per_class=d.get("per_class", {}),
            counts=d.get("counts", {}),
            undefined_reason=d.get("undefined_reason", {}),
        )


def evaluate(snapshot: OntologySnapshot, ontology_id: str = "default",
             timestamp: int = 0) -> MetricReport:
    """Run every metric over one snapshot.

    Deterministic for a given snapshot (the caller supplies the timestamp).
    Ratios that are undefined on this snapshot come back as None with an
    entry in undefined_reason.
    """
    stats = schema_stats(snapshot)
    kstats = kb_stats(snapshot)
    undefined = {}

    if stats.C == 0:
        rr = ir = ar = cr = None
        undefined["rr"] = undefined["ir"] = undefined["ar"] = undefined["cr"] = "empty ontology"
    else:
        rr = relationship_richness(stats)
        ir = inheritance_richness(stats)
        ar = attribute_richness(stats)
        cr = class_richness(snapshot)

    kb_empty = kstats.total_instances == 0
    if kb_empty and stats.C > 0:
        undefined["importance"] = "empty knowledge base"

    per_class = {}
    for cls in sorted(snapshot.classes):
        per_class[cls.value] = {
            "connectivity": class_connectivity(snapshot, cls),
            "importance": None if kb_empty else class_importance(snapshot, cls),
            "class_rr": class_relationship_richness(snapshot, cls),
        }

    return MetricReport(
        ontology_id=ontology_id,
        timestamp=timestamp,
        rr=rr,
        ir=ir,
        ar=ar,
        cr=cr,
        cohesion=kstats.components,
        per_class=per_class,
        counts={
            "P": stats.P, "H": stats.H, "C": stats.C, "S": stats.S, "att": stats.att,
            "nonempty_classes": kstats.nonempty_classes,
            "total_instances": kstats.total_instances,
            "ignored_triples": snapshot.ignored_triples,
        },
        undefined_reason=undefined,
    )


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    a: float | None
    b: float | None
    delta: float | None


def compare(a: MetricReport, b: MetricReport) -> list:
    """Side-by-side metric rows with signed deltas; no verdict.

    A delta involving an undefined value is itself undefined (None).
    """
    rows = []
    for name in MetricReport.SERIES_METRICS:
        va = a.metric_value(name)
        vb = b.metric_value(name)
        delta = None if va is None or vb is None else vb - va
        rows.append(ComparisonRow(name, va, vb, delta))
    return rows
