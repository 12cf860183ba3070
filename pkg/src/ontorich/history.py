"""Append-only evaluation history, one log file per ontology id.

Record format (newline-delimited, tab-separated):

    sequence<TAB>timestamp<TAB>metric_name<TAB>value

Undefined metric values are stored as the literal string ``null``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import StoreCorrupt
from .metrics import MetricReport

_SAFE_ID = re.compile(r"[^A-Za-z0-9_.\-]")


@dataclass(frozen=True)
class HistoryEntry:
    report: MetricReport
    sequence: int


class HistoryStore:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, ontology_id: str) -> Path:
        return self.root / (_SAFE_ID.sub("_", ontology_id) + ".log")

    def _read(self, ontology_id: str):
        path = self._path(ontology_id)
        if not path.exists():
            return []
        records = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 4:
                    raise StoreCorrupt(f"{path}:{lineno}: expected 4 fields")
                seq_s, ts_s, name, value_s = parts
                try:
                    seq = int(seq_s)
                    ts = int(ts_s)
                    value = None if value_s == "null" else float(value_s)
                except ValueError as exc:
                    raise StoreCorrupt(f"{path}:{lineno}: {exc}") from exc
                records.append((seq, ts, name, value))
        return records

    def record(self, report: MetricReport) -> HistoryEntry:
        records = self._read(report.ontology_id)
        seq = max((r[0] for r in records), default=0) + 1
        lines = []
        for name in MetricReport.SERIES_METRICS:
            value = report.metric_value(name)
            value_s = "null" if value is None else repr(float(value))
            lines.append(f"{seq}\t{report.timestamp}\t{name}\t{value_s}\n")
        path = self._path(report.ontology_id)
        with open(path, "a", encoding="utf-8") as fh:
            fh.writelines(lines)
            fh.flush()
            os.fsync(fh.fileno())
        return HistoryEntry(report, seq)

    def series(self, ontology_id: str, metric_name: str):
        """Timestamp-ordered (timestamp, value) points for one metric."""
        points = [
            (ts, value)
            for seq, ts, name, value in self._read(ontology_id)
            if name == metric_name
        ]
        points.sort(key=lambda p: p[0])
        return points


def record_history(store: HistoryStore, report: MetricReport) -> HistoryEntry:
    return store.record(report)


def history_series(store: HistoryStore, ontology_id: str, metric_name: str):
    return store.series(ontology_id, metric_name)
