"""Command-line interface for the ontorich workbench.

Exit codes: 0 success, 1 domain error (bad input data, unknown ids,
validation failures the data caused), 2 usage error.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from .corpus import Document
from .errors import OntoRichError
from .patterns import load_pattern_rules
from .report import history_tsv, plot_history, write_report_bundle
from .workspace import Workspace, workspace_root

METRIC_NAMES = ("rr", "ir", "ar", "cr", "cohesion")


def handles_errors(fn):
    """Map domain errors to exit code 1 with a one-line message."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OntoRichError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)
    return wrapper


@click.group()
@click.option("--workspace", "-w", "workspace_path", default=None,
              help="Workspace directory (default: $ONTORICH_WORKSPACE or ./workspace).")
@click.pass_context
def main(ctx, workspace_path):
    """Ontology enrichment and evaluation workbench."""
    ctx.obj = workspace_root(workspace_path)


def get_ws(ctx) -> Workspace:
    return Workspace(ctx.obj)


# --- ontology -----------------------------------------------------------


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handles_errors
def load(ctx, path):
    """Load a Turtle ontology into the workspace."""
    ws = get_ws(ctx)
    snapshot = ws.load_ontology(path)
    click.echo(
        f"loaded {path}: {len(snapshot.classes)} classes, "
        f"{len(snapshot.instances)} instances, "
        f"{snapshot.ignored_triples} ignored triples")


@main.command()
@click.argument("path", required=False, type=click.Path(dir_okay=False))
@click.pass_context
@handles_errors
def save(ctx, path):
    """Serialize the active ontology (to PATH, or in place)."""
    target = get_ws(ctx).save_ontology(path)
    click.echo(f"saved {target}")


def _print_tree(node, depth=0):
    click.echo("  " * depth + node.label)
    for child in node.children:
        _print_tree(child, depth + 1)


@main.command()
@click.pass_context
@handles_errors
def tree(ctx):
    """Print the class hierarchy as an indented tree."""
    for root in get_ws(ctx).tree():
        _print_tree(root)


@main.command()
@click.pass_context
@handles_errors
def validate(ctx):
    """Report structural problems in the active ontology."""
    issues = get_ws(ctx).validate()
    for issue in issues:
        click.echo(f"{issue.kind}\t{issue.detail}")
    if not issues:
        click.echo("no issues")


@main.command("eval")
@click.option("--json", "as_json", is_flag=True, help="Emit the canonical JSON report.")
@click.pass_context
@handles_errors
def eval_cmd(ctx, as_json):
    """Evaluate quality metrics over the active ontology."""
    ws = get_ws(ctx)
    if as_json:
        click.echo(ws.eval_json(), nl=False)
        return
    report = ws.eval_report()
    for name in METRIC_NAMES:
        value = report.metric_value(name)
        shown = "undefined" if value is None else f"{value:.6f}"
        click.echo(f"{name}\t{shown}")
    for key, reason in sorted(report.undefined_reason.items()):
        click.echo(f"# {key} undefined: {reason}")


@main.command()
@click.argument("other", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handles_errors
def compare(ctx, other):
    """Compare the active ontology's metrics against another Turtle file."""
    rows = get_ws(ctx).compare_with(other)
    click.echo("metric\tcurrent\tother\tdelta")
    for row in rows:
        def fmt(v):
            return "" if v is None else f"{v:.6f}"
        click.echo(f"{row.metric}\t{fmt(row.a)}\t{fmt(row.b)}\t{fmt(row.delta)}")


@main.command()
@click.argument("metric", type=click.Choice(METRIC_NAMES))
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False),
              help="Also render a line chart PNG to this path.")
@click.pass_context
@handles_errors
def history(ctx, metric, plot_path):
    """Print the recorded history of one metric as TSV."""
    series = get_ws(ctx).history_series(metric)
    click.echo(history_tsv(series), nl=False)
    if plot_path:
        plot_history(series, metric, plot_path)
        click.echo(f"# wrote {plot_path}", err=True)


@main.command()
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.pass_context
@handles_errors
def report(ctx, out_dir):
    """Write metric tables (TSV) and charts (PNG) into OUT_DIR."""
    for path in write_report_bundle(get_ws(ctx), out_dir):
        click.echo(str(path))


# --- corpus / terms -----------------------------------------------------


@main.group()
def corpus():
    """Manage the text corpus."""


@corpus.command("add")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--title", default=None, help="Document title (default: file stem).")
@click.pass_context
@handles_errors
def corpus_add(ctx, path, title):
    """Add a plain-text file to the corpus."""
    ws = get_ws(ctx)
    p = Path(path)
    doc = Document(
        id=p.stem,
        title=title or p.stem,
        body=p.read_text(encoding="utf-8"),
        source=str(p),
    )
    ws.corpus_store.add(doc)
    click.echo(f"added {doc.id}")


@corpus.command("list")
@click.pass_context
@handles_errors
def corpus_list(ctx):
    """List corpus documents."""
    for doc in get_ws(ctx).corpus.documents:
        click.echo(f"{doc.id}\t{doc.title}")


@main.command()
@click.option("--min-freq", default=2, show_default=True, type=int)
@click.option("--max-words", default=3, show_default=True, type=int)
@click.pass_context
@handles_errors
def terms(ctx, min_freq, max_words):
    """Extract candidate terms from the corpus (frequency-ranked)."""
    result = get_ws(ctx).extract_terms(min_freq, max_words)
    click.echo("term\tcount\ttf")
    for cand in result.candidates:
        click.echo(f"{cand.surface}\t{cand.n_i}\t{cand.tf:.8f}")


@main.command()
@click.option("--min-freq", default=2, show_default=True, type=int)
@click.option("--max-words", default=3, show_default=True, type=int)
@click.pass_context
@handles_errors
def tfidf(ctx, min_freq, max_words):
    """Extract candidate terms with tf-idf scores."""
    result = get_ws(ctx).extract_tfidf(min_freq, max_words)
    ranked = sorted(result.candidates, key=lambda c: (-(c.tfidf or 0.0), c.surface))
    click.echo("term\tcount\ttf\ttfidf")
    for cand in ranked:
        click.echo(f"{cand.surface}\t{cand.n_i}\t{cand.tf:.8f}\t{cand.tfidf:.8f}")


# --- lexicon ------------------------------------------------------------


def _print_hyp(node, depth=0):
    label = ", ".join(node.lemmas) if node.lemmas else "*"
    click.echo("  " * depth + label)
    for child in node.children:
        _print_hyp(child, depth + 1)


@main.command()
@click.argument("lemma")
@click.option("--depth", default=2, show_default=True, type=int)
@click.pass_context
@handles_errors
def hyponyms(ctx, lemma, depth):
    """Print the hyponym tree below LEMMA."""
    _print_hyp(get_ws(ctx).hyponyms(lemma, depth))


@main.command()
@click.argument("lemma")
@click.option("--kind", default="part", show_default=True,
              type=click.Choice(["part", "member", "substance"]))
@click.pass_context
@handles_errors
def meronyms(ctx, lemma, kind):
    """List meronyms of LEMMA of the given kind."""
    for word in get_ws(ctx).meronyms(lemma, kind):
        click.echo(word)


@main.command("suggest-relations")
@click.pass_context
@handles_errors
def suggest_relations_cmd(ctx):
    """Propose lexicon-backed relations between ontology classes."""
    ws = get_ws(ctx)
    new = ws.run_suggest_relations()
    for cand in new:
        click.echo(f"{cand.id}\t{cand.surface}")
    report = ws.suggest_relations()
    for label in report.unresolved_labels:
        click.echo(f"# unresolved: {label}", err=True)
    click.echo(f"# {len(new)} new candidates", err=True)


# --- pattern extraction -------------------------------------------------


def _report_new(new):
    for cand in new:
        click.echo(f"{cand.id}\t{cand.surface}\t{cand.concept or '-'}\t{cand.rule}")
    click.echo(f"# {len(new)} new candidates", err=True)


@main.command()
@click.pass_context
@handles_errors
def hearst(ctx):
    """Run Hearst-style lexical patterns over the corpus."""
    _report_new(get_ws(ctx).run_hearst())


@main.command()
@click.pass_context
@handles_errors
def copula(ctx):
    """Run copula ("X is a Y") extraction over the corpus."""
    _report_new(get_ws(ctx).run_copula())


@main.command()
@click.pass_context
@handles_errors
def entities(ctx):
    """Run entity heuristics (proper names, dates) over the corpus."""
    _report_new(get_ws(ctx).run_entities())


@main.command()
@click.argument("rules_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handles_errors
def pattern(ctx, rules_file):
    """Run user-defined pattern rules from RULES_FILE over the corpus."""
    rules = load_pattern_rules(rules_file)
    _report_new(get_ws(ctx).run_custom(rules))


# --- feeds --------------------------------------------------------------


@main.group()
def feeds():
    """RSS feed ingestion."""


@feeds.command("sync")
@click.pass_context
@handles_errors
def feeds_sync(ctx):
    """Fetch every configured feed and store new items."""
    report = get_ws(ctx).feeds_sync()
    click.echo(f"new\t{report.new}")
    click.echo(f"duplicate\t{report.duplicate}")
    for url, message in report.failed:
        click.echo(f"failed\t{url}\t{message}")


@feeds.command("import")
@click.argument("domain")
@click.pass_context
@handles_errors
def feeds_import(ctx, domain):
    """Turn stored items of DOMAIN into corpus documents."""
    created = get_ws(ctx).feeds_import(domain)
    for doc in created:
        click.echo(f"{doc.id}\t{doc.title}")
    click.echo(f"# {len(created)} documents created", err=True)


# --- candidates ---------------------------------------------------------


@main.group()
def candidates():
    """Review extraction candidates."""


@candidates.command("list")
@click.option("--status", default=None,
              type=click.Choice(["Proposed", "Accepted", "Rejected"]))
@click.pass_context
@handles_errors
def candidates_list(ctx, status):
    """List candidates, optionally filtered by status."""
    for cand in get_ws(ctx).candidate_log.list(status):
        click.echo(
            f"{cand.id}\t{cand.status}\t{cand.kind}\t{cand.surface}\t"
            f"{cand.concept or '-'}\t{cand.rule}")


@candidates.command("accept")
@click.argument("cid")
@click.pass_context
@handles_errors
def candidates_accept(ctx, cid):
    """Accept a candidate and apply its edits to the ontology."""
    cand = get_ws(ctx).accept_candidate(cid)
    click.echo(f"{cand.id}\tAccepted")


@candidates.command("reject")
@click.argument("cid")
@click.pass_context
@handles_errors
def candidates_reject(ctx, cid):
    """Reject a candidate."""
    cand = get_ws(ctx).reject_candidate(cid)
    click.echo(f"{cand.id}\tRejected")


# --- server -------------------------------------------------------------


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=7781, show_default=True, type=int)
@click.pass_context
def serve(ctx, host, port):
    """Run the HTTP API server."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(ctx.obj), host=host, port=port)


if __name__ == "__main__":
    main()
