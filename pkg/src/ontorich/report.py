"""Report rendering: delimited metric tables plus matplotlib figures."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .metrics import MetricReport  # noqa: E402


def metrics_tsv(report: MetricReport) -> str:
    lines = ["metric\tvalue"]
    for name in MetricReport.SERIES_METRICS:
        value = report.metric_value(name)
        lines.append(f"{name}\t{'' if value is None else value}")
    for key in sorted(report.counts):
        lines.append(f"count.{key}\t{report.counts[key]}")
    return "\n".join(lines) + "\n"


def per_class_tsv(report: MetricReport) -> str:
    lines = ["class\tconnectivity\timportance\tclass_rr"]
    for iri, vals in sorted(report.per_class.items()):
        imp = vals["importance"]
        lines.append(
            f"{iri}\t{vals['connectivity']}\t{'' if imp is None else imp}\t{vals['class_rr']}")
    return "\n".join(lines) + "\n"


def history_tsv(series) -> str:
    lines = ["timestamp\tvalue"]
    for ts, value in series:
        lines.append(f"{ts}\t{'' if value is None else value}")
    return "\n".join(lines) + "\n"


def plot_history(series, metric_name: str, out_path) -> Path:
    """Line chart of one metric over recorded evaluations."""
    xs = list(range(1, len(series) + 1))
    ys = [v for _, v in series]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(xs, ys, marker="o")
    ax.set_xlabel("evaluation")
    ax.set_ylabel(metric_name)
    ax.set_title(f"{metric_name} over time")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return Path(out_path)


def plot_metric_bars(report: MetricReport, out_path) -> Path:
    """Bar chart of the current ratio metrics."""
    names = [n for n in ("rr", "ir", "ar", "cr") if report.metric_value(n) is not None]
    values = [report.metric_value(n) for n in names]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(names, values, color="#4878a8")
    ax.set_ylabel("value")
    ax.set_title("ontology quality metrics")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return Path(out_path)


def write_report_bundle(workspace, out_dir) -> list:
    """Write metrics.tsv, per_class.tsv, a metric bar chart and one
    history chart per metric into out_dir; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = workspace.eval_report()
    written = []

    path = out / "metrics.tsv"
    path.write_text(metrics_tsv(report), encoding="utf-8")
    written.append(path)

    path = out / "per_class.tsv"
    path.write_text(per_class_tsv(report), encoding="utf-8")
    written.append(path)

    written.append(plot_metric_bars(report, out / "metrics.png"))

    for name in MetricReport.SERIES_METRICS:
        series = workspace.history_series(name)
        if series:
            path = out / f"history_{name}.tsv"
            path.write_text(history_tsv(series), encoding="utf-8")
            written.append(path)
            written.append(plot_history(series, name, out / f"history_{name}.png"))
    return written
