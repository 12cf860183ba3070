"""WordNet-style semantic network: hyponym trees, meronym queries and
relation suggestions for ontology concepts.

Lexicon file format, one synset per line, '#' comments allowed:

    id<TAB>pos<TAB>lemma1,lemma2,...<TAB>kind:target;kind:target;...

pos is one of n/v/a/r. Pointer kinds: hypernym, hyponym, part_meronym,
member_meronym, substance_meronym, part_holonym, member_holonym,
substance_holonym. Inverse pointers are completed automatically when the
file states only one direction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    DanglingPointer,
    DanglingReference,
    HypernymCycle,
    LexiconFormatError,
    UnknownLemma,
)
from .model import Iri
from .ontology import EditOp, OntologySnapshot

POINTER_KINDS = (
    "hypernym", "hyponym",
    "part_meronym", "member_meronym", "substance_meronym",
    "part_holonym", "member_holonym", "substance_holonym",
)

_INVERSE = {
    "hypernym": "hyponym",
    "hyponym": "hypernym",
    "part_meronym": "part_holonym",
    "part_holonym": "part_meronym",
    "member_meronym": "member_holonym",
    "member_holonym": "member_meronym",
    "substance_meronym": "substance_holonym",
    "substance_holonym": "substance_meronym",
}

_MERONYM_BY_KIND = {
    "part": "part_meronym",
    "member": "member_meronym",
    "substance": "substance_meronym",
}


@dataclass
class Synset:
    id: str
    pos: str
    lemmas: list
    pointers: list = field(default_factory=list)  # (kind, target id)


@dataclass
class Lexicon:
    synsets: dict = field(default_factory=dict)
    lemma_index: dict = field(default_factory=dict)  # lemma -> [synset ids]

    def noun_synsets(self, lemma: str) -> list:
        ids = self.lemma_index.get(lemma.lower(), [])
        return [self.synsets[i] for i in ids if self.synsets[i].pos == "n"]


def load_lexicon(path) -> Lexicon:
    """Load and verify a lexicon file; see the module docstring for the
    format."""
    synsets = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n").strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (3, 4):
                raise LexiconFormatError(lineno, "expected 3 or 4 tab-separated fields")
            sid, pos, lemma_field = parts[0], parts[1], parts[2]
            if pos not in ("n", "v", "a", "r"):
                raise LexiconFormatError(lineno, f"bad pos {pos!r}")
            lemmas = [l.strip().lower() for l in lemma_field.split(",") if l.strip()]
            if not lemmas:
                raise LexiconFormatError(lineno, "synset needs at least one lemma")
            if sid in synsets:
                raise LexiconFormatError(lineno, f"duplicate synset id {sid!r}")
            pointers = []
            if len(parts) == 4 and parts[3]:
                for chunk in parts[3].split(";"):
                    chunk = chunk.strip()
                    if not chunk:
                        continue
                    kind, _, target = chunk.partition(":")
                    if kind not in POINTER_KINDS or not target:
                        raise LexiconFormatError(lineno, f"bad pointer {chunk!r}")
                    pointers.append((kind, target))
            synsets[sid] = Synset(sid, pos, lemmas, pointers)

    for syn in synsets.values():
        for kind, target in syn.pointers:
            if target not in synsets:
                raise DanglingPointer(syn.id, target)

    # complete inverse pointers
    for syn in list(synsets.values()):
        for kind, target in list(syn.pointers):
            inverse = (_INVERSE[kind], syn.id)
            if inverse not in synsets[target].pointers:
                synsets[target].pointers.append(inverse)

    _check_hypernym_acyclic(synsets)

    index = {}
    for syn in synsets.values():
        for lemma in syn.lemmas:
            index.setdefault(lemma, []).append(syn.id)
    for ids in index.values():
        ids.sort()
    return Lexicon(synsets, index)


def _check_hypernym_acyclic(synsets):
    WHITE, GREY, BLACK = 0, 1, 2
    color = {}
    for start in synsets.values():
        if start.pos != "n" or color.get(start.id, WHITE) != WHITE:
            continue
        stack = [(start.id, iter(_hypernyms(synsets, start.id)))]
        color[start.id] = GREY
        while stack:
            sid, it = stack[-1]
            advanced = False
            for parent in it:
                state = color.get(parent, WHITE)
                if state == GREY:
                    raise HypernymCycle(f"cycle through {parent!r}")
                if state == WHITE:
                    color[parent] = GREY
                    stack.append((parent, iter(_hypernyms(synsets, parent))))
                    advanced = True
                    break
            if not advanced:
                color[sid] = BLACK
                stack.pop()


def _hypernyms(synsets, sid):
    return [t for k, t in synsets[sid].pointers if k == "hypernym"]


# --- queries ------------------------------------------------------------

@dataclass
class HypNode:
    synset_id: str | None
    lemmas: list
    children: list = field(default_factory=list)


def hyponym_tree(lexicon: Lexicon, lemma: str, max_depth: int) -> HypNode:
    """Hyponym tree rooted at the noun senses of a lemma.

    Polysemous lemmas get a virtual root over one subtree per sense. Each
    synset appears at most once per sense root (first encounter in
    preorder wins); nodes deeper than max_depth are cut off.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    senses = lexicon.noun_synsets(lemma)
    if not senses:
        raise UnknownLemma(lemma)

    def build(syn, depth, seen):
        node = HypNode(syn.id, list(syn.lemmas))
        if depth < max_depth:
            for kind, target in syn.pointers:
                if kind != "hyponym" or target in seen:
                    continue
                seen.add(target)
                node.children.append(build(lexicon.synsets[target], depth + 1, seen))
        return node

    roots = [build(s, 0, {s.id}) for s in senses]
    if len(roots) == 1:
        return roots[0]
    return HypNode(None, [lemma.lower()], roots)


def meronyms(lexicon: Lexicon, lemma: str, kind: str) -> list:
    """Lemmas one pointer away by the requested meronym kind
    (part/member/substance), deduplicated and sorted."""
    pointer_kind = _MERONYM_BY_KIND[kind.lower()]
    senses = lexicon.noun_synsets(lemma)
    if not senses:
        raise UnknownLemma(lemma)
    out = set()
    for syn in senses:
        for k, target in syn.pointers:
            if k == pointer_kind:
                out.update(lexicon.synsets[target].lemmas)
    return sorted(out)


# --- relation suggestions ----------------------------------------------

@dataclass
class RelationCandidate:
    subject_label: str
    relation: str  # isKindOf | partOf | memberOf | madeFrom
    object_label: str
    evidence: list  # synset id path
    subject: Iri | None = None
    object: Iri | None = None
    status: str = "Proposed"


@dataclass
class SuggestionReport:
    candidates: list
    unresolved_labels: list


def label_to_lemma(label: str) -> str:
    """Ontology label to lexicon lemma: split camel case, lowercase,
    strip punctuation, keep spaces of multi-word lemmas."""
    spaced = re.sub(r"(?<=[a-z0-9])(?=[A-Z])", " ", label)
    spaced = re.sub(r"[_\-]+", " ", spaced)
    spaced = re.sub(r"[^\w\s]", "", spaced)
    return re.sub(r"\s+", " ", spaced).strip().lower()


def _hypernym_path(lexicon, start_id, goal_id):
    """Synset path start..goal following hypernym pointers, or None."""
    stack = [(start_id, [start_id])]
    seen = {start_id}
    while stack:
        sid, path = stack.pop()
        if sid == goal_id:
            return path
        for target in _hypernyms(lexicon.synsets, sid):
            if target not in seen:
                seen.add(target)
                stack.append((target, path + [target]))
    return None


def suggest_relations(lexicon: Lexicon, snapshot: OntologySnapshot) -> SuggestionReport:
    """Propose partOf/memberOf/madeFrom (one-hop meronym pointers) and
    isKindOf (transitive hypernym ancestry) candidates between ontology
    concepts; pairs already related in the snapshot are suppressed."""
    resolved = []
    unresolved = []
    for cls in sorted(snapshot.classes):
        label = snapshot.label_of(cls)
        lemma = label_to_lemma(label)
        senses = lexicon.noun_synsets(lemma)
        if senses:
            resolved.append((cls, label, senses))
        else:
            unresolved.append(label)

    existing_rel = set()
    for s, p, o in snapshot.relation_assertions:
        existing_rel.add((s, p.local_name().lower(), o))

    candidates = []
    for a_cls, a_label, a_senses in resolved:
        for b_cls, b_label, b_senses in resolved:
            if a_cls == b_cls:
                continue
            found = {}
            for sb in b_senses:
                for sa in a_senses:
                    # A partOf/memberOf B: the whole (B) points at the
                    # part (A); A madeFrom B: the artifact (A) points at
                    # its substance (B)
                    for relation, kind in (
                        ("partOf", "part_meronym"),
                        ("memberOf", "member_meronym"),
                    ):
                        if relation not in found and (kind, sa.id) in sb.pointers:
                            found[relation] = [sb.id, sa.id]
                    if "madeFrom" not in found and \
                            ("substance_meronym", sb.id) in sa.pointers:
                        found["madeFrom"] = [sa.id, sb.id]
                    if "isKindOf" not in found:
                        path = _hypernym_path(lexicon, sa.id, sb.id)
                        if path is not None and len(path) > 1:
                            found["isKindOf"] = path
            for relation, evidence in sorted(found.items()):
                if relation == "isKindOf":
                    if (a_cls, b_cls) in snapshot.subclass_edges or b_cls in snapshot.ancestors(a_cls):
                        continue
                elif (a_cls, relation.lower(), b_cls) in existing_rel:
                    continue
                candidates.append(RelationCandidate(
                    a_label, relation, b_label, evidence, a_cls, b_cls))
    candidates.sort(key=lambda c: (c.subject_label, c.relation, c.object_label))
    return SuggestionReport(candidates, unresolved)


def lemma_to_class_iri(namespace: str, lemma: str) -> Iri:
    local = "".join(w.capitalize() for w in re.split(r"[\s_\-]+", lemma) if w)
    return Iri(namespace + local)


def hyponym_enrich(selections, target_concept: Iri,
                   snapshot: OntologySnapshot, namespace: str) -> list:
    """Turn selected hyponym-tree lemmas into AddClass edits under the
    target concept."""
    if target_concept not in snapshot.classes:
        raise DanglingReference(f"target class {target_concept} does not exist")
    edits = []
    for lemma in selections:
        iri = lemma_to_class_iri(namespace, lemma)
        edits.append(EditOp("AddClass", subject=iri, object=target_concept))
    return edits
