import pytest

from ontorich.errors import StoreCorrupt
from ontorich.history import HistoryStore, history_series, record_history
from ontorich.metrics import MetricReport


def report(ts, rr=0.5, cr=None):
    return MetricReport(
        ontology_id="ont", timestamp=ts,
        rr=rr, ir=1.0, ar=0.0, cr=cr, cohesion=2)


def test_record_and_series(tmp_path):
    store = HistoryStore(tmp_path)
    record_history(store, report(100, rr=0.25))
    record_history(store, report(200, rr=0.75))
    series = history_series(store, "ont", "rr")
    assert series == [(100, 0.25), (200, 0.75)]


def test_series_length_equals_record_count(tmp_path):
    store = HistoryStore(tmp_path)
    for i in range(5):
        store.record(report(i * 10))
    for metric in MetricReport.SERIES_METRICS:
        assert len(store.series("ont", metric)) == 5


def test_sequence_increases(tmp_path):
    store = HistoryStore(tmp_path)
    e1 = store.record(report(1))
    e2 = store.record(report(2))
    assert e2.sequence == e1.sequence + 1


def test_undefined_stored_as_null(tmp_path):
    store = HistoryStore(tmp_path)
    store.record(report(1, cr=None))
    assert store.series("ont", "cr") == [(1, None)]
    text = (tmp_path / "ont.log").read_text(encoding="utf-8")
    assert "\tcr\tnull" in text


def test_series_sorted_by_timestamp(tmp_path):
    store = HistoryStore(tmp_path)
    store.record(report(300))
    store.record(report(100))
    ts = [t for t, _ in store.series("ont", "rr")]
    assert ts == [100, 300]


def test_per_ontology_isolation(tmp_path):
    store = HistoryStore(tmp_path)
    store.record(report(1))
    other = MetricReport("other", 5, 0.1, 0.1, 0.1, 0.1, 1)
    store.record(other)
    assert len(store.series("ont", "rr")) == 1
    assert len(store.series("other", "rr")) == 1


def test_corrupt_store_raises(tmp_path):
    store = HistoryStore(tmp_path)
    store.record(report(1))
    with open(tmp_path / "ont.log", "a", encoding="utf-8") as fh:
        fh.write("not a record\n")
    with pytest.raises(StoreCorrupt):
        store.series("ont", "rr")


def test_unknown_ontology_is_empty(tmp_path):
    assert HistoryStore(tmp_path).series("nothing", "rr") == []
