"""Review queue for extraction candidates.

Candidates live in an append-only log so the accept/reject loop survives
restarts. An accept record carries the edit it implies (write-ahead);
replaying the log after a crash re-applies any accepted edit that never
reached the ontology file.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import StoreCorrupt
from .model import Iri
from .ontology import EditOp, edit_from_dict, edit_to_dict


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        c = value[i]
        if c == "\\" and i + 1 < len(value):
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(value[i + 1], value[i + 1]))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


@dataclass
class Candidate:
    id: str
    kind: str      # instance | relation | term
    surface: str
    concept: str   # class IRI, raw noun phrase, or ""
    rule: str
    status: str = "Proposed"
    accepted_edits: list | None = None


def candidate_id(kind: str, surface: str, concept: str, rule: str) -> str:
    digest = hashlib.sha1(f"{kind}|{surface}|{concept}|{rule}".encode("utf-8"))
    return digest.hexdigest()[:10]


class CandidateLog:
    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._by_id: dict[str, Candidate] = {}
        self._order: list[str] = []
        if self.path.exists():
            self._replay()

    def _replay(self):
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                fields = [_unescape(f) for f in line.split("\t")]
                op = fields[0]
                if op == "propose" and len(fields) == 6:
                    _, cid, kind, surface, concept, rule = fields
                    if cid not in self._by_id:
                        self._by_id[cid] = Candidate(cid, kind, surface, concept, rule)
                        self._order.append(cid)
                elif op == "accept" and len(fields) == 3:
                    _, cid, edit_json = fields
                    cand = self._by_id.get(cid)
                    if cand is None:
                        raise StoreCorrupt(f"{self.path}:{lineno}: accept of unknown id {cid}")
                    cand.status = "Accepted"
                    cand.accepted_edits = [edit_from_dict(d) for d in json.loads(edit_json)]
                elif op == "reject" and len(fields) == 2:
                    cand = self._by_id.get(fields[1])
                    if cand is None:
                        raise StoreCorrupt(f"{self.path}:{lineno}: reject of unknown id {fields[1]}")
                    cand.status = "Rejected"
                else:
                    raise StoreCorrupt(f"{self.path}:{lineno}: bad record")

    def _append(self, fields):
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write("\t".join(_escape(f) for f in fields) + "\n")

    def list(self, status=None):
        out = [self._by_id[cid] for cid in self._order]
        if status is not None:
            out = [c for c in out if c.status == status]
        return out

    def get(self, cid) -> Candidate | None:
        return self._by_id.get(cid)

    def propose(self, kind, surface, concept, rule) -> Candidate:
        """Idempotent: re-proposing an identical candidate returns the
        existing record."""
        cid = candidate_id(kind, surface, concept, rule)
        if cid in self._by_id:
            return self._by_id[cid]
        cand = Candidate(cid, kind, surface, concept, rule)
        self._append(["propose", cid, kind, surface, concept, rule])
        self._by_id[cid] = cand
        self._order.append(cid)
        return cand

    def mark_accepted(self, cid: str, edits: list) -> None:
        """Write-ahead record: the edits are logged before the ontology
        file is rewritten."""
        cand = self._by_id[cid]
        payload = json.dumps([edit_to_dict(e) for e in edits], sort_keys=True)
        self._append(["accept", cid, payload])
        cand.status = "Accepted"
        cand.accepted_edits = list(edits)

    def mark_rejected(self, cid: str) -> None:
        cand = self._by_id[cid]
        self._append(["reject", cid])
        cand.status = "Rejected"

    def accepted_edits(self):
        out = []
        for cid in self._order:
            cand = self._by_id[cid]
            if cand.status == "Accepted" and cand.accepted_edits:
                out.extend(cand.accepted_edits)
        return out


def edit_for_candidate(cand: Candidate, namespace: str, snapshot) -> EditOp:
    """The AddInstance edit an accepted instance candidate implies."""
    from .lexicon import lemma_to_class_iri

    if cand.concept.startswith("http://") or cand.concept.startswith("https://"):
        cls = Iri(cand.concept)
    else:
        cls = lemma_to_class_iri(namespace, cand.concept.lower())
    local = "".join(w.capitalize() for w in cand.surface.split())
    inst = Iri(namespace + local)
    return EditOp("AddInstance", subject=inst, object=cls)
