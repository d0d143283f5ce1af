"""Command-line interface.

All state lives in one sqlite file selected with ``--db`` (or the BLINKER_DB
environment variable), so a whole annotation effort moves between machines as
two plain files: the database and the exported alignment file.
"""

from __future__ import annotations

import functools
import sys

import click

from . import alignment_io, corpus, reports
from .agreement import AnnotationSet, agreement_report, majority_vote
from .errors import BlinkerError
from .lexicons import Lexicons
from .linter import ERROR, lint
from .store import Store

DB_OPTION = click.option("--db", "db_path", default="blinker.db", envvar="BLINKER_DB",
                         show_default=True, help="sqlite database holding all state.")


def _friendly(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BlinkerError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _load_verses(corpus_path, db_path):
    """verse_id -> VersePair from a bitext TSV, falling back to the database."""
    if corpus_path:
        with open(corpus_path, encoding="utf-8") as fh:
            return {vp.id: vp for vp in corpus.load_bitext(fh)}
    store = Store(db_path)
    try:
        return {vid: store.get_verse(vid) for vid in store.verse_ids()}
    finally:
        store.close()


def _grouped_sets(alignments):
    sets = {}
    for verse_id, group in alignment_io.group_by_verse(alignments).items():
        sets[verse_id] = AnnotationSet(verse_id, tuple(group))
    return sets


@click.group()
@click.version_option(package_name="blinker-align")
def main():
    """Blinker-style bitext word alignment: ingest, annotate, lint, adjudicate."""


@main.command()
@click.argument("bitext", type=click.Path(exists=True, dir_okay=False))
@DB_OPTION
@_friendly
def ingest(bitext, db_path):
    """Load a bitext TSV (id, source lang, target lang, source, target)."""
    with open(bitext, encoding="utf-8") as fh:
        pairs = corpus.load_bitext(fh)
    store = Store(db_path)
    try:
        n = store.add_verses(pairs)
    finally:
        store.close()
    click.echo(f"ingested {n} verse pairs into {db_path}")


@main.group()
def campaign():
    """Manage annotation campaigns."""


@campaign.command("new")
@click.option("--name", default="campaign", show_default=True)
@click.option("--group", "groups", multiple=True, required=True,
              help="Comma-separated annotator ids; repeat per group.")
@click.option("--set-size", type=int, default=10, show_default=True,
              help="Verses sampled for each group.")
@click.option("--seed", type=int, default=0, show_default=True)
@DB_OPTION
@_friendly
def campaign_new(name, groups, set_size, seed, db_path):
    """Sample one verse set per group and open the tasks."""
    parsed = [[a.strip() for a in g.split(",") if a.strip()] for g in groups]
    store = Store(db_path)
    try:
        c = store.create_campaign(name, parsed, set_size, seed)
        pending = len(store.pending_tasks(c.id))
    finally:
        store.close()
    click.echo(f"campaign {c.id} ({name}): {len(c.groups)} groups, "
               f"{sum(len(g) for g in c.groups)} annotators, {pending} pending tasks")
    for i, (group, verse_set) in enumerate(zip(c.groups, c.verse_sets)):
        click.echo(f"  set {i}: {', '.join(verse_set)}  <- {', '.join(group)}")


@main.command("lint")
@click.argument("alignments", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              help="Bitext TSV with the verse texts (default: read from --db).")
@DB_OPTION
@_friendly
def lint_cmd(alignments, corpus_path, db_path):
    """Check an alignment file against the style guide rules."""
    verses = _load_verses(corpus_path, db_path)
    lex = Lexicons.default()
    records = alignment_io.load_alignment_file(alignments)
    errors = 0
    for a in records:
        if a.verse_id not in verses:
            raise click.ClickException(f"verse {a.verse_id!r} not in corpus")
        for f in lint(verses[a.verse_id], a, lex):
            errors += f.severity == ERROR
            tokens = " ".join(f"{side}:{idx}" for side, idx in f.tokens)
            click.echo("\t".join([a.verse_id, a.annotator_id, f.rule_id,
                                  f.severity, tokens, f.message]))
    click.echo(f"checked {len(records)} alignments: {errors} errors", err=True)
    if errors:
        sys.exit(1)


@main.command()
@click.argument("alignments", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              help="Bitext TSV; enables the token-category variation table.")
@click.option("--report-dir", type=click.Path(file_okay=False),
              help="Write TSV tables and PNG figures here.")
@click.option("--threshold", type=float, default=0.5, show_default=True)
@DB_OPTION
@_friendly
def compare(alignments, corpus_path, report_dir, threshold, db_path):
    """Pairwise agreement between the annotators of an alignment file."""
    sets = _grouped_sets(alignment_io.load_alignment_file(alignments))
    for verse_id in sorted(sets):
        report = agreement_report(sets[verse_id])
        click.echo(f"{verse_id}\t{len(sets[verse_id])} annotators\tmean F1 {report.mean_f1:.4f}")
    means = [agreement_report(s).mean_f1 for s in sets.values() if len(s) > 1]
    if means:
        click.echo(f"overall mean F1 {sum(means) / len(means):.4f}")
    if report_dir:
        verses = None
        try:
            verses = _load_verses(corpus_path, db_path)
        except (OSError, BlinkerError):
            pass
        written = reports.write_report(report_dir, sets, verses, threshold)
        for path in written:
            click.echo(f"wrote {path}", err=True)


@main.command()
@click.argument("alignments", type=click.Path(exists=True, dir_okay=False))
@click.option("--threshold", type=float, default=0.5, show_default=True,
              help="Keep atoms with support strictly above threshold * annotators.")
@_friendly
def vote(alignments, threshold):
    """Adjudicate an alignment file into one gold line per verse."""
    sets = _grouped_sets(alignment_io.load_alignment_file(alignments))
    unresolved_total = 0
    for verse_id in sorted(sets):
        outcome = majority_vote(sets[verse_id], threshold)
        click.echo(alignment_io.alignment_to_line(outcome.gold))
        unresolved_total += len(outcome.unresolved)
        for side, index in outcome.unresolved:
            click.echo(f"unresolved\t{verse_id}\t{side}:{index}", err=True)
    click.echo(f"{len(sets)} verses, {unresolved_total} unresolved tokens", err=True)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@DB_OPTION
@_friendly
def serve(host, port, db_path):
    """Run the annotation HTTP service."""
    import uvicorn

    from .service import create_app

    store = Store(db_path)
    uvicorn.run(create_app(store), host=host, port=port)


if __name__ == "__main__":
    main()
