"""HTTP API over a workspace.

Every response body carries the workspace revision so clients can do
optimistic concurrency: mutations send the revision they last read and get
409 back when it is stale. GET /metrics returns the cached canonical JSON
for the current revision, byte-identical to `ontorich eval --json`.

Domain errors map to 400 with {"error": <exception name>, "message": ...};
stale revisions map to 409; unknown ids to 404.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import OntoRichError, StaleRevision
from .metrics import MetricReport, compare, evaluate
from .ontology import build_ontology_view, edit_from_dict
from .patterns import PatternRule
from .turtle import parse_turtle
from .workspace import Workspace, workspace_root


def _tree_to_dict(node) -> dict:
    return {
        "iri": node.iri.value,
        "label": node.label,
        "children": [_tree_to_dict(c) for c in node.children],
    }


def _hyp_to_dict(node) -> dict:
    return {
        "synset_id": node.synset_id,
        "lemmas": list(node.lemmas),
        "children": [_hyp_to_dict(c) for c in node.children],
    }


def _candidate_to_dict(cand) -> dict:
    return {
        "id": cand.id,
        "kind": cand.kind,
        "surface": cand.surface,
        "concept": cand.concept,
        "rule": cand.rule,
        "status": cand.status,
    }


def create_app(root=None) -> FastAPI:
    ws = Workspace(workspace_root(root))
    app = FastAPI(title="ontorich", docs_url=None, redoc_url=None)

    def envelope(payload: dict, status_code: int = 200) -> JSONResponse:
        payload = dict(payload)
        payload["revision"] = ws.revision
        return JSONResponse(payload, status_code=status_code)

    def check_revision(body: dict) -> None:
        supplied = body.get("revision")
        if supplied is not None and int(supplied) != ws.revision:
            raise StaleRevision(supplied=int(supplied), current=ws.revision)

    @app.exception_handler(OntoRichError)
    async def domain_error(request: Request, exc: OntoRichError):
        if isinstance(exc, StaleRevision):
            return JSONResponse(
                {"error": "StaleRevision", "message": str(exc),
                 "supplied": exc.supplied, "current": exc.current,
                 "revision": ws.revision},
                status_code=409)
        return JSONResponse(
            {"error": type(exc).__name__, "message": str(exc),
             "revision": ws.revision},
            status_code=400)

    def require_candidate(cid: str):
        if ws.candidate_log.get(cid) is None:
            raise UnknownCandidate(cid)

    class UnknownCandidate(Exception):
        pass

    @app.exception_handler(UnknownCandidate)
    async def unknown_candidate(request: Request, exc: UnknownCandidate):
        return JSONResponse(
            {"error": "DanglingReference",
             "message": f"no candidate {exc.args[0]}",
             "revision": ws.revision},
            status_code=404)

    # --- ontology -------------------------------------------------------

    @app.get("/ontology/tree")
    def get_tree():
        return envelope({"roots": [_tree_to_dict(n) for n in ws.tree()]})

    @app.get("/ontology/relationships")
    def get_relationships():
        snapshot = ws.snapshot
        domain = dict(snapshot.property_domain)
        range_ = dict(snapshot.property_range)
        props = [
            {
                "iri": p.value,
                "label": snapshot.label_of(p),
                "domain": domain[p].value if p in domain else None,
                "range": range_[p].value if p in range_ else None,
            }
            for p in sorted(snapshot.object_properties)
        ]
        assertions = [
            {"subject": s.value, "prop": p.value, "object": o.value}
            for s, p, o in sorted(snapshot.relation_assertions)
        ]
        return envelope({"properties": props, "assertions": assertions})

    @app.get("/ontology/instances")
    def get_instances(request: Request):
        # the filter query parameter is literally named "class", so it is
        # read off the raw query string rather than a Python parameter
        cls_iri = request.query_params.get("class")
        snapshot = ws.snapshot
        out = []
        for iri, types in sorted(snapshot.instances):
            type_values = sorted(t.value for t in types)
            if cls_iri is not None and cls_iri not in type_values:
                continue
            out.append({
                "iri": iri.value,
                "label": snapshot.label_of(iri),
                "types": type_values,
            })
        return envelope({"instances": out})

    @app.post("/ontology/edits")
    async def post_edits(request: Request):
        body = await request.json()
        check_revision(body)
        edits = [edit_from_dict(d) for d in body.get("edits", [])]
        snapshot = ws.apply_edits(edits)
        return envelope({
            "applied": len(edits),
            "classes": len(snapshot.classes),
            "instances": len(snapshot.instances),
        })

    @app.post("/ontology/save")
    def post_save():
        target = ws.save_ontology()
        return envelope({"saved": str(target)})

    @app.get("/ontology/validate")
    def get_validate():
        issues = ws.validate()
        return envelope({
            "issues": [{"kind": i.kind, "detail": i.detail} for i in issues]})

    # --- metrics --------------------------------------------------------

    @app.get("/metrics")
    def get_metrics():
        return Response(content=ws.eval_json(), media_type="application/json")

    @app.get("/metrics/history")
    def get_history(metric: str):
        if metric not in MetricReport.SERIES_METRICS:
            return envelope(
                {"error": "UnknownMetric", "message": metric}, status_code=400)
        series = ws.history_series(metric)
        return envelope({
            "metric": metric,
            "points": [{"timestamp": ts, "value": v} for ts, v in series],
        })

    @app.post("/metrics/compare")
    async def post_compare(request: Request):
        body = await request.json()
        other = build_ontology_view(parse_turtle(body["turtle"]))
        rows = compare(ws.eval_report(),
                       evaluate(other, body.get("ontology_id", "other")))
        return envelope({
            "rows": [
                {"metric": r.metric, "a": r.a, "b": r.b, "delta": r.delta}
                for r in rows
            ]})

    # --- corpus / terms -------------------------------------------------

    @app.get("/terms")
    def get_terms(min_freq: int = 2, max_words: int = 3):
        result = ws.extract_terms(min_freq, max_words)
        return envelope({
            "total_word_tokens": result.total_word_tokens,
            "terms": [
                {"surface": c.surface, "count": c.n_i, "tf": c.tf}
                for c in result.candidates
            ]})

    @app.get("/tfidf")
    def get_tfidf(min_freq: int = 2, max_words: int = 3):
        result = ws.extract_tfidf(min_freq, max_words)
        ranked = sorted(result.candidates,
                        key=lambda c: (-(c.tfidf or 0.0), c.surface))
        return envelope({
            "terms": [
                {"surface": c.surface, "count": c.n_i,
                 "tf": c.tf, "tfidf": c.tfidf}
                for c in ranked
            ]})

    # --- lexicon --------------------------------------------------------

    @app.get("/lexicon/hyponyms")
    def get_hyponyms(lemma: str, depth: int = 2):
        return envelope({"tree": _hyp_to_dict(ws.hyponyms(lemma, depth))})

    @app.get("/lexicon/meronyms")
    def get_meronyms(lemma: str, kind: str = "part"):
        return envelope({"lemma": lemma, "kind": kind,
                         "meronyms": ws.meronyms(lemma, kind)})

    @app.post("/lexicon/suggest-relations")
    def post_suggest():
        new = ws.run_suggest_relations()
        report = ws.suggest_relations()
        return envelope({
            "new": [_candidate_to_dict(c) for c in new],
            "unresolved_labels": list(report.unresolved_labels),
        })

    # --- pattern extraction ---------------------------------------------

    def _extraction_response(new):
        return envelope({"new": [_candidate_to_dict(c) for c in new]})

    @app.post("/patterns/hearst")
    def post_hearst():
        return _extraction_response(ws.run_hearst())

    @app.post("/patterns/copula")
    def post_copula():
        return _extraction_response(ws.run_copula())

    @app.post("/patterns/entities")
    def post_entities():
        return _extraction_response(ws.run_entities())

    @app.post("/patterns/custom")
    async def post_custom(request: Request):
        body = await request.json()
        rules = [
            PatternRule(
                name=r["name"], anchor=r["anchor"], capture=r["capture"],
                direction=r["direction"], max_gap=int(r.get("max_gap", 0)))
            for r in body.get("rules", [])
        ]
        return _extraction_response(ws.run_custom(rules))

    # --- feeds ----------------------------------------------------------

    @app.post("/feeds/sync")
    def post_feeds_sync():
        report = ws.feeds_sync()
        return envelope({
            "new": report.new,
            "duplicate": report.duplicate,
            "failed": [{"url": u, "message": m} for u, m in report.failed],
        })

    @app.post("/feeds/import")
    async def post_feeds_import(request: Request):
        body = await request.json()
        created = ws.feeds_import(body["domain"])
        return envelope({
            "created": [{"id": d.id, "title": d.title} for d in created]})

    # --- candidates -----------------------------------------------------

    @app.get("/candidates")
    def get_candidates(status: str | None = None):
        return envelope({
            "candidates": [
                _candidate_to_dict(c) for c in ws.candidate_log.list(status)
            ]})

    @app.post("/candidates/{cid}/accept")
    async def post_accept(cid: str, request: Request):
        require_candidate(cid)
        raw = await request.body()
        if raw:
            check_revision(json.loads(raw))
        cand = ws.accept_candidate(cid)
        return envelope({"candidate": _candidate_to_dict(cand)})

    @app.post("/candidates/{cid}/reject")
    async def post_reject(cid: str, request: Request):
        require_candidate(cid)
        raw = await request.body()
        if raw:
            check_revision(json.loads(raw))
        cand = ws.reject_candidate(cid)
        return envelope({"candidate": _candidate_to_dict(cand)})

    return app
