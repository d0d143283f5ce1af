"""Agreement reports: delimited tables plus rendered figures.

``write_report`` drops four artifacts into a directory: ``pairwise.tsv``
(per-verse precision/recall/F1 per ordered annotator pair), ``votes.tsv``
(per-atom support counts with the keep decision at the chosen threshold),
``variation.tsv`` (contested atoms bucketed by token category, when verse
texts are available) and two PNG figures — a mean-F1 heatmap over annotator
pairs and a histogram of atom support counts.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Dict, Iterable, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .agreement import (AnnotationSet, CATEGORY_ORDER, compare, majority_vote,
                        variation_report, vote_table)
from .alignment_io import atom_to_string, sort_atoms
from .lexicons import Lexicons
from .tokens import VersePair

PAIRWISE_TSV = "pairwise.tsv"
VOTES_TSV = "votes.tsv"
VARIATION_TSV = "variation.tsv"
PAIRWISE_PNG = "pairwise_f1.png"
VOTES_PNG = "vote_counts.png"


def pairwise_rows(sets: Dict[str, AnnotationSet]) -> list:
    rows = []
    for verse_id in sorted(sets):
        annotations = sets[verse_id]
        for a, b in itertools.permutations(sorted(annotations.annotators()), 2):
            prf = compare(annotations.by_annotator(a), annotations.by_annotator(b))
            rows.append((verse_id, a, b, prf.precision, prf.recall, prf.f1))
    return rows


def vote_rows(sets: Dict[str, AnnotationSet], threshold: float = 0.5) -> list:
    rows = []
    for verse_id in sorted(sets):
        annotations = sets[verse_id]
        n = len(annotations)
        counts = vote_table(annotations)
        for atom in sort_atoms(counts):
            c = counts[atom]
            rows.append((verse_id, atom_to_string(atom), c, n, c > threshold * n))
    return rows


def variation_rows(sets: Dict[str, AnnotationSet], verses: Dict[str, VersePair],
                   lex: Optional[Lexicons] = None) -> list:
    lex = lex or Lexicons.default()
    rows = []
    for verse_id in sorted(sets):
        if verse_id not in verses:
            continue
        buckets = variation_report(verses[verse_id], sets[verse_id], lex)
        for cat in CATEGORY_ORDER:
            rows.append((verse_id, cat, buckets[cat]))
    return rows


def mean_f1_matrix(sets: Dict[str, AnnotationSet]):
    """All annotators across the file; None where a pair never met."""
    annotators = sorted({a for s in sets.values() for a in s.annotators()})
    sums: dict = {}
    for verse_id, annotations in sets.items():
        present = annotations.annotators()
        for a, b in itertools.combinations(sorted(present), 2):
            f1 = compare(annotations.by_annotator(a), annotations.by_annotator(b)).f1
            total, count = sums.get((a, b), (0.0, 0))
            sums[(a, b)] = (total + f1, count + 1)
    matrix = []
    for a in annotators:
        row = []
        for b in annotators:
            if a == b:
                row.append(1.0)
                continue
            key = (min(a, b), max(a, b))
            if key in sums:
                total, count = sums[key]
                row.append(total / count)
            else:
                row.append(None)
        matrix.append(row)
    return annotators, matrix


def support_histogram(sets: Dict[str, AnnotationSet]) -> dict:
    """support count -> number of atoms with that support, over all verses."""
    hist: dict = {}
    for annotations in sets.values():
        for c in vote_table(annotations).values():
            hist[c] = hist.get(c, 0) + 1
    return hist


def _write_tsv(path: Path, header, rows) -> None:
    def cell(x):
        if isinstance(x, bool):
            return "yes" if x else "no"
        if isinstance(x, float):
            return f"{x:.4f}"
        return str(x)

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(cell(x) for x in row) + "\n")


def render_pairwise_figure(path: Path, annotators, matrix) -> None:
    n = len(annotators)
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * n + 2), max(3.5, 0.9 * n + 1.5)))
    data = [[v if v is not None else float("nan") for v in row] for row in matrix]
    im = ax.imshow(data, vmin=0.0, vmax=1.0, cmap="viridis")
    ax.set_xticks(range(n), labels=annotators, rotation=45, ha="right")
    ax.set_yticks(range(n), labels=annotators)
    for i in range(n):
        for j in range(n):
            v = matrix[i][j]
            ax.text(j, i, "–" if v is None else f"{v:.2f}",
                    ha="center", va="center",
                    color="white" if (v is None or v < 0.6) else "black", fontsize=8)
    ax.set_title("Mean pairwise F1")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_vote_figure(path: Path, histogram: dict) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    counts = sorted(histogram) or [0]
    ax.bar([str(c) for c in counts], [histogram.get(c, 0) for c in counts],
           color="#4878a8")
    ax.set_xlabel("annotators supporting the atom")
    ax.set_ylabel("atoms")
    ax.set_title("Atom support distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report_dir, sets: Dict[str, AnnotationSet],
                 verses: Optional[Dict[str, VersePair]] = None,
                 threshold: float = 0.5, lex: Optional[Lexicons] = None) -> list:
    """Write all report files; returns the paths written."""
    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    path = out / PAIRWISE_TSV
    _write_tsv(path, ("verse_id", "annotator_a", "annotator_b", "precision", "recall", "f1"),
               pairwise_rows(sets))
    written.append(path)

    path = out / VOTES_TSV
    _write_tsv(path, ("verse_id", "atom", "support", "annotators", "kept"),
               vote_rows(sets, threshold))
    written.append(path)

    if verses:
        path = out / VARIATION_TSV
        _write_tsv(path, ("verse_id", "category", "contested_atoms"),
                   variation_rows(sets, verses, lex))
        written.append(path)

    annotators, matrix = mean_f1_matrix(sets)
    path = out / PAIRWISE_PNG
    render_pairwise_figure(path, annotators, matrix)
    written.append(path)

    path = out / VOTES_PNG
    render_vote_figure(path, support_histogram(sets))
    written.append(path)
    return written
