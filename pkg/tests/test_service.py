import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from ontorich.cli import main
from ontorich.server import create_app

IT = "http://it.example.org/"


@pytest.fixture
def ws_root(tmp_path, fixtures):
    root = tmp_path / "ws"
    runner = CliRunner()
    result = runner.invoke(main, ["-w", str(root), "load", str(fixtures / "it.ttl")])
    assert result.exit_code == 0, result.output
    url = "file://" + str(fixtures / "feed1.xml")
    (root / "feeds.conf").write_text(f"{url}\tit\t3600\n", encoding="utf-8")
    return root


def cli(ws_root, *args):
    return CliRunner().invoke(main, ["-w", str(ws_root), *args])


def test_cli_eval_json_matches_http_metrics(ws_root):
    cli_out = cli(ws_root, "eval", "--json").output
    client = TestClient(create_app(ws_root))
    assert client.get("/metrics").text == cli_out


def test_byte_identity_after_mutation(ws_root):
    client = TestClient(create_app(ws_root))
    rev = client.get("/metrics").json()["revision"]
    r = client.post("/ontology/edits", json={
        "revision": rev,
        "edits": [{"kind": "AddClass", "subject": IT + "Tablet"}]})
    assert r.status_code == 200
    http_metrics = client.get("/metrics").text
    assert json.loads(http_metrics)["revision"] == rev + 1
    assert cli(ws_root, "eval", "--json").output == http_metrics


def test_stale_revision_409(ws_root):
    client = TestClient(create_app(ws_root))
    rev = client.get("/metrics").json()["revision"]
    r = client.post("/ontology/edits", json={
        "revision": rev - 1,
        "edits": [{"kind": "AddClass", "subject": IT + "Nope"}]})
    assert r.status_code == 409
    body = r.json()
    assert body["error"] == "StaleRevision"
    assert body["current"] == rev
    # the edit was not applied
    assert client.get("/metrics").json()["revision"] == rev


def test_domain_error_400(ws_root):
    client = TestClient(create_app(ws_root))
    rev = client.get("/metrics").json()["revision"]
    r = client.post("/ontology/edits", json={
        "revision": rev,
        "edits": [{"kind": "AddSubclassEdge", "subject": IT + "Ghost",
                   "object": IT + "Computer"}]})
    assert r.status_code == 400
    assert r.json()["error"] == "DanglingReference"


def test_unknown_candidate_404(ws_root):
    client = TestClient(create_app(ws_root))
    r = client.post("/candidates/ffffffffff/accept")
    assert r.status_code == 404


def test_responses_carry_revision(ws_root):
    client = TestClient(create_app(ws_root))
    for path in ("/ontology/tree", "/ontology/relationships", "/candidates",
                 "/terms?min_freq=1", "/lexicon/meronyms?lemma=computer"):
        body = client.get(path).json()
        assert "revision" in body, path


def test_candidate_accept_flow_over_http(ws_root):
    client = TestClient(create_app(ws_root))
    client.post("/feeds/sync")
    client.post("/feeds/import", json={"domain": "it"})
    new = client.post("/patterns/hearst").json()["new"]
    assert {c["surface"] for c in new} == {"Dell", "Toshiba"}
    rev = client.get("/metrics").json()["revision"]
    r = client.post(f"/candidates/{new[0]['id']}/accept", json={"revision": rev})
    assert r.status_code == 200
    assert r.json()["candidate"]["status"] == "Accepted"
    # idempotent success
    r2 = client.post(f"/candidates/{new[0]['id']}/accept")
    assert r2.status_code == 200
    instances = client.get(
        "/ontology/instances", params={"class": IT + "LaptopProducer"}).json()
    assert len(instances["instances"]) == 1


def test_history_endpoint(ws_root):
    client = TestClient(create_app(ws_root))
    client.get("/metrics")
    r = client.get("/metrics/history", params={"metric": "cr"})
    assert r.status_code == 200
    assert len(r.json()["points"]) == 1
    assert client.get("/metrics/history", params={"metric": "bogus"}).status_code == 400


def test_compare_endpoint(ws_root, fixtures):
    client = TestClient(create_app(ws_root))
    turtle = (fixtures / "micro1.ttl").read_text(encoding="utf-8")
    r = client.post("/metrics/compare", json={"turtle": turtle})
    rows = {row["metric"]: row for row in r.json()["rows"]}
    assert rows["rr"]["b"] == pytest.approx(2 / 3)


def test_cli_exit_codes(ws_root, tmp_path):
    assert cli(ws_root, "eval").exit_code == 0
    # domain error: accepting an unknown candidate id
    result = cli(ws_root, "candidates", "accept", "nope0nope0")
    assert result.exit_code == 1
    # usage error: unknown metric name
    assert cli(ws_root, "history", "bogus").exit_code == 2


def test_cli_history_plot_writes_png(ws_root, tmp_path):
    cli(ws_root, "eval")
    png = tmp_path / "rr.png"
    result = cli(ws_root, "history", "rr", "--plot", str(png))
    assert result.exit_code == 0, result.output
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_cli_report_bundle(ws_root, tmp_path):
    cli(ws_root, "eval")
    out = tmp_path / "bundle"
    result = cli(ws_root, "report", str(out))
    assert result.exit_code == 0, result.output
    tsv = (out / "metrics.tsv").read_text(encoding="utf-8")
    assert tsv.splitlines()[0] == "metric\tvalue"
    assert (out / "metrics.png").exists()
    assert (out / "history_rr.tsv").exists()


def test_cli_validate_and_tree(ws_root):
    assert "no issues" in cli(ws_root, "validate").output
    tree = cli(ws_root, "tree").output
    assert "Computer" in tree and "  Laptop" in tree


def test_cli_save_round_trips(ws_root, tmp_path):
    target = tmp_path / "saved.ttl"
    assert cli(ws_root, "save", str(target)).exit_code == 0
    from ontorich.ontology import build_ontology_view
    from ontorich.turtle import parse_turtle

    s = build_ontology_view(parse_turtle(target.read_text(encoding="utf-8")))
    assert len(s.classes) == 12
