"""Bitext ingestion and verse-set sampling.

The ingestion format is tab-separated, one verse pair per line, UTF-8 with LF
line ends:

    id <TAB> source_lang <TAB> target_lang <TAB> source_raw <TAB> target_raw

Lines beginning with ``#`` are comments; blank lines are ignored.
"""

from __future__ import annotations

import random
from typing import IO, Iterable, Sequence

from .errors import CorpusSizeError, DuplicateIdError, FormatError
from .tokens import ElisionTable, VersePair

N_FIELDS = 5


def iter_bitext_records(stream: Iterable[str]):
    """Yield (lineno, fields) for each data line, validating field count."""
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != N_FIELDS:
            raise FormatError(f"expected {N_FIELDS} tab-separated fields, got {len(fields)}", line=lineno)
        yield lineno, fields


def load_bitext(stream: IO[str] | Iterable[str], table: ElisionTable | None = None) -> list[VersePair]:
    """Read the ingestion TSV into tokenized verse pairs, preserving order."""
    table = table or ElisionTable.default()
    pairs: list[VersePair] = []
    seen: dict[str, int] = {}
    for lineno, (verse_id, source_lang, target_lang, source_raw, target_raw) in (
        (n, f) for n, f in iter_bitext_records(stream)
    ):
        if verse_id in seen:
            raise DuplicateIdError(f"duplicate verse id {verse_id!r} (lines {seen[verse_id]} and {lineno})")
        seen[verse_id] = lineno
        pairs.append(VersePair.build(verse_id, source_lang, target_lang, source_raw, target_raw, table))
    return pairs


def write_bitext(pairs: Iterable[VersePair], stream: IO[str]) -> None:
    for vp in pairs:
        stream.write(f"{vp.id}\t{vp.source_lang}\t{vp.target_lang}\t{vp.source_raw}\t{vp.target_raw}\n")


def sample_verse_sets(corpus: Sequence, set_size: int, n_sets: int, seed: int) -> list[list[str]]:
    """Draw ``n_sets`` disjoint verse-id sets of ``set_size``, uniformly without replacement.

    Deterministic for a fixed seed.  ``corpus`` may hold VersePair values or
    plain id strings.
    """
    ids = [vp.id if isinstance(vp, VersePair) else vp for vp in corpus]
    need = set_size * n_sets
    if need > len(ids):
        raise CorpusSizeError(f"sampling needs {need} verses but the corpus has {len(ids)}")
    rng = random.Random(seed)
    picked = rng.sample(ids, need)
    return [picked[i * set_size:(i + 1) * set_size] for i in range(n_sets)]
