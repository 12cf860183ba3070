"""Persistent workspace: one directory holding the active ontology, the
corpus, the lexicon, feed and candidate stores, evaluation history and a
monotonically increasing revision counter.

All mutation goes through this module under an advisory file lock
(single writer); reads work against immutable snapshots. Metric reports
are cached per revision so the CLI and the HTTP API return byte-identical
JSON for the same revision.
"""

from __future__ import annotations

import fcntl
import json
import os
import time
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

from . import candidates as cand_mod
from . import metrics as metrics_mod
from .corpus import Corpus, CorpusStore, default_stopwords, extract_terms, tfidf
from .errors import DanglingReference, DuplicateEntity, OntoRichError, WorkspaceLocked
from .history import HistoryStore
from .ingest import ItemStore, default_http_get, items_to_corpus, load_feed_specs, sync
from .lexicon import Lexicon, hyponym_tree, load_lexicon, meronyms, suggest_relations
from .model import Iri
from .ontology import (
    EditOp,
    OntologySnapshot,
    apply_edit,
    build_ontology_view,
    class_tree,
    validate_structure,
)
from .patterns import copula_extract, custom_extract, entity_heuristics, hearst_extract
from .textproc import split_sentences
from .turtle import parse_turtle, serialize_turtle

ENV_VAR = "ONTORICH_WORKSPACE"
DEFAULT_NAMESPACE = "http://ontorich.local/ns#"


def workspace_root(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(ENV_VAR, "workspace"))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class Workspace:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "feeds").mkdir(exist_ok=True)
        (self.root / "reports").mkdir(exist_ok=True)
        self.ontology_path = self.root / "ontology.ttl"
        self.meta_path = self.root / "meta.json"
        self.corpus_store = CorpusStore(self.root / "corpus")
        self.history = HistoryStore(self.root / "history")
        self.candidate_log = cand_mod.CandidateLog(self.root / "candidates.log")
        self.item_store = ItemStore(self.root / "feeds" / "items.log")
        self._lexicon = None
        self._snapshot = None
        self._seed_lexicon()
        self._recover()

    # --- locking / revision --------------------------------------------

    @contextmanager
    def write_lock(self):
        lock_path = self.root / ".lock"
        with open(lock_path, "w") as fh:
            try:
                fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
            except OSError as exc:
                raise WorkspaceLocked(str(self.root)) from exc
            try:
                yield
            finally:
                fcntl.flock(fh.fileno(), fcntl.LOCK_UN)

    @property
    def revision(self) -> int:
        path = self.root / "revision"
        if not path.exists():
            return 0
        return int(path.read_text().strip() or 0)

    def _bump_revision(self) -> int:
        new = self.revision + 1
        (self.root / "revision").write_text(str(new))
        return new

    # --- meta / ontology ------------------------------------------------

    def _meta(self) -> dict:
        if self.meta_path.exists():
            return json.loads(self.meta_path.read_text())
        return {}

    def _write_meta(self, meta: dict) -> None:
        self.meta_path.write_text(canonical_json(meta))

    @property
    def ontology_id(self) -> str:
        return self._meta().get("ontology_id", "default")

    @property
    def namespace(self) -> str:
        return self._meta().get("namespace", DEFAULT_NAMESPACE)

    @property
    def snapshot(self) -> OntologySnapshot:
        if self._snapshot is None:
            if self.ontology_path.exists():
                graph = parse_turtle(self.ontology_path.read_text(encoding="utf-8"))
            else:
                graph = parse_turtle("")
            self._snapshot = build_ontology_view(graph)
        return self._snapshot

    def load_ontology(self, path) -> OntologySnapshot:
        text = Path(path).read_text(encoding="utf-8")
        graph = parse_turtle(text)
        snapshot = build_ontology_view(graph)
        with self.write_lock():
            self._save_snapshot(snapshot)
            meta = self._meta()
            meta["ontology_id"] = Path(path).stem
            self._write_meta(meta)
            self._bump_revision()
        self._snapshot = snapshot
        return snapshot

    def save_ontology(self, path=None) -> Path:
        target = Path(path) if path else self.ontology_path
        tmp = target.with_suffix(target.suffix + ".tmp")
        tmp.write_text(serialize_turtle(self.snapshot.graph), encoding="utf-8")
        os.replace(tmp, target)
        return target

    def _save_snapshot(self, snapshot: OntologySnapshot) -> None:
        tmp = self.ontology_path.with_suffix(".ttl.tmp")
        tmp.write_text(serialize_turtle(snapshot.graph), encoding="utf-8")
        os.replace(tmp, self.ontology_path)

    def apply_edits(self, edits) -> OntologySnapshot:
        """Apply a batch atomically: all edits validate against the
        running snapshot before anything is persisted."""
        snapshot = self.snapshot
        for edit in edits:
            snapshot = apply_edit(snapshot, edit)
        with self.write_lock():
            self._save_snapshot(snapshot)
            self._bump_revision()
        self._snapshot = snapshot
        return snapshot

    def _recover(self):
        """Re-apply accepted candidate edits that never reached the
        ontology file (crash between the accept record and the save)."""
        snapshot = self.snapshot
        changed = False
        for edit in self.candidate_log.accepted_edits():
            try:
                snapshot = apply_edit(snapshot, edit)
                changed = True
            except (DuplicateEntity, DanglingReference):
                continue
        if changed:
            self._save_snapshot(snapshot)
            self._snapshot = snapshot

    # --- evaluation -----------------------------------------------------

    def _report_path(self, revision: int) -> Path:
        return self.root / "reports" / f"{revision}.json"

    def eval_json(self) -> str:
        """Canonical JSON envelope for the current revision; cached so
        every caller sees identical bytes."""
        rev = self.revision
        path = self._report_path(rev)
        if path.exists():
            return path.read_text(encoding="utf-8")
        report = metrics_mod.evaluate(
            self.snapshot, self.ontology_id, timestamp=int(time.time()))
        self.history.record(report)
        payload = canonical_json({"revision": rev, "report": report.to_dict()})
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(payload, encoding="utf-8")
        os.replace(tmp, path)
        return payload

    def eval_report(self) -> metrics_mod.MetricReport:
        data = json.loads(self.eval_json())
        return metrics_mod.MetricReport.from_dict(data["report"])

    def compare_with(self, other_ttl_path):
        other = build_ontology_view(
            parse_turtle(Path(other_ttl_path).read_text(encoding="utf-8")))
        mine = self.eval_report()
        theirs = metrics_mod.evaluate(other, Path(other_ttl_path).stem)
        return metrics_mod.compare(mine, theirs)

    def history_series(self, metric_name):
        return self.history.series(self.ontology_id, metric_name)

    def tree(self):
        return class_tree(self.snapshot)

    def validate(self):
        return validate_structure(self.snapshot)

    # --- corpus / lexicon ----------------------------------------------

    @property
    def corpus(self) -> Corpus:
        return self.corpus_store.load()

    def stopwords(self) -> set:
        path = self.root / "stopwords.txt"
        if path.exists():
            return {
                line.strip().lower()
                for line in path.read_text(encoding="utf-8").splitlines()
                if line.strip() and not line.startswith("#")
            }
        return default_stopwords()

    def extract_terms(self, min_freq, max_words):
        return extract_terms(self.corpus, min_freq, max_words, self.stopwords())

    def extract_tfidf(self, min_freq, max_words):
        corpus = self.corpus
        result = extract_terms(corpus, min_freq, max_words, self.stopwords())
        tfidf(corpus, result)
        return result

    def _seed_lexicon(self):
        path = self.root / "lexicon.lex"
        if not path.exists():
            source = resources.files("ontorich.data") / "mini-lexicon.lex"
            path.write_text(source.read_text(encoding="utf-8"), encoding="utf-8")

    @property
    def lexicon(self) -> Lexicon:
        if self._lexicon is None:
            self._lexicon = load_lexicon(self.root / "lexicon.lex")
        return self._lexicon

    def hyponyms(self, lemma, depth):
        return hyponym_tree(self.lexicon, lemma, depth)

    def meronyms(self, lemma, kind):
        return meronyms(self.lexicon, lemma, kind)

    def suggest_relations(self):
        return suggest_relations(self.lexicon, self.snapshot)

    # --- extraction into the candidate queue ---------------------------

    def _propose_all(self, found, kind):
        new = []
        for c in found:
            concept = c.concept.value if isinstance(c.concept, Iri) else (c.concept or "")
            before = self.candidate_log.get(
                cand_mod.candidate_id(kind, c.surface, concept, c.rule))
            cand = self.candidate_log.propose(kind, c.surface, concept, c.rule)
            if before is None:
                new.append(cand)
        if new:
            with self.write_lock():
                self._bump_revision()
        return new

    def _corpus_sentences(self):
        for doc in self.corpus.documents:
            yield from split_sentences(doc.body)

    def run_hearst(self):
        found = []
        for sentence in self._corpus_sentences():
            found.extend(hearst_extract(sentence, self.snapshot))
        return self._propose_all(found, "instance")

    def run_copula(self):
        found = []
        for sentence in self._corpus_sentences():
            found.extend(copula_extract(sentence, self.snapshot))
        return self._propose_all(found, "instance")

    def run_entities(self):
        found = []
        for sentence in self._corpus_sentences():
            found.extend(entity_heuristics(sentence))
        return self._propose_all(found, "instance")

    def run_custom(self, rules):
        found = []
        corpus = self.corpus
        for rule in rules:
            found.extend(custom_extract(corpus, rule))
        return self._propose_all(found, "instance")

    def run_suggest_relations(self):
        report = self.suggest_relations()
        new = []
        for rc in report.candidates:
            cid = cand_mod.candidate_id(
                "relation", f"{rc.subject.value} {rc.relation} {rc.object.value}", "", rc.relation)
            before = self.candidate_log.get(cid)
            cand = self.candidate_log.propose(
                "relation", f"{rc.subject.value} {rc.relation} {rc.object.value}",
                "", rc.relation)
            if before is None:
                new.append(cand)
        if new:
            with self.write_lock():
                self._bump_revision()
        return new

    # --- candidate review ----------------------------------------------

    def edits_for_accept(self, cand) -> list:
        """Edits an accept implies: one AddInstance (plus AddClass when the
        concept was a raw noun phrase), or the relation/subclass edit for a
        relation candidate."""
        snapshot = self.snapshot
        if cand.kind == "relation":
            subj_iri, relation, obj_iri = cand.surface.split(" ")
            subj, obj = Iri(subj_iri), Iri(obj_iri)
            if relation == "isKindOf":
                return [EditOp("AddSubclassEdge", subject=subj, object=obj)]
            prop = Iri(self.namespace + relation)
            edits = []
            if prop not in snapshot.object_properties:
                edits.append(EditOp("AddObjectProperty", subject=prop))
            edits.append(EditOp("AddRelationAssertion", subject=subj, prop=prop, object=obj))
            return edits
        edits = []
        if cand.concept.startswith(("http://", "https://")):
            cls = Iri(cand.concept)
        else:
            from .lexicon import lemma_to_class_iri

            cls = lemma_to_class_iri(self.namespace, cand.concept.lower() or "thing")
            if cls not in snapshot.classes:
                edits.append(EditOp("AddClass", subject=cls))
        inst_local = "".join(w.capitalize() for w in cand.surface.split())
        inst = Iri(self.namespace + inst_local)
        edits.append(EditOp("AddInstance", subject=inst, object=cls))
        return edits

    def accept_candidate(self, cid: str):
        """Atomic accept: the edit batch is logged write-ahead, then the
        ontology is saved. Accepting twice is an idempotent success."""
        cand = self.candidate_log.get(cid)
        if cand is None:
            raise DanglingReference(f"no candidate {cid}")
        if cand.status == "Accepted":
            return cand
        edits = self.edits_for_accept(cand)
        snapshot = self.snapshot
        for edit in edits:
            snapshot = apply_edit(snapshot, edit)  # validate before logging
        with self.write_lock():
            self.candidate_log.mark_accepted(cid, edits)
            self._save_snapshot(snapshot)
            self._bump_revision()
        self._snapshot = snapshot
        return cand

    def reject_candidate(self, cid: str):
        cand = self.candidate_log.get(cid)
        if cand is None:
            raise DanglingReference(f"no candidate {cid}")
        if cand.status == "Rejected":
            return cand
        with self.write_lock():
            self.candidate_log.mark_rejected(cid)
            self._bump_revision()
        return cand

    # --- feeds ----------------------------------------------------------

    def feed_specs(self):
        path = self.root / "feeds.conf"
        if not path.exists():
            return []
        return load_feed_specs(path)

    def feeds_sync(self, http_get=default_http_get):
        report = sync(self.item_store, self.feed_specs(), http_get)
        if report.new:
            with self.write_lock():
                self._bump_revision()
        return report

    def feeds_import(self, domain: str):
        corpus = self.corpus
        created = items_to_corpus(self.item_store, domain, corpus)
        for doc in created:
            self.corpus_store.add(doc)
        if created:
            with self.write_lock():
                self._bump_revision()
        return created
