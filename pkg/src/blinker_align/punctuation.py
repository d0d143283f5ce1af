"""Crossing-minimal linking of leftover punctuation marks.

After the words of a verse pair are linked, similar punctuation marks on the
two sides are paired so that the combined link picture has as few crossings
as possible.  Marks are only paired within a similarity class (exact surface
match, or a configurable group such as the quote characters), as many pairs
as the class counts allow; surplus marks stay unlinked and become Not
Translated candidates.  The search is exhaustive, so the number of unlinked
marks per side is capped.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .alignment import Alignment, Link, crossing_count
from .errors import PunctSearchBoundError
from .tokens import PUNCTUATION, VersePair

DEFAULT_MAX_PER_SIDE = 8

# Marks that may pair with each other even when not identical.
DEFAULT_SIMILARITY_GROUPS: tuple[frozenset[str], ...] = (
    frozenset({'"', "«", "»", "“", "”"}),
    frozenset({"'", "‘", "’"}),
    frozenset({".", "!", "?", "…"}),
    frozenset({",", ";", ":"}),
    frozenset({"-", "–", "—"}),
)


def mark_class(surface: str, groups: Sequence[frozenset[str]] = DEFAULT_SIMILARITY_GROUPS):
    for i, group in enumerate(groups):
        if surface in group:
            return ("group", i)
    return ("exact", surface)


def _class_pairings(src: Sequence[int], tgt: Sequence[int]):
    """All injective pairings of maximum size between two index lists."""
    k = min(len(src), len(tgt))
    if k == 0:
        yield ()
        return
    for chosen in combinations(src, k):
        for perm in permutations(tgt, k):
            yield tuple(zip(chosen, perm))


def enumerate_pairings(cand_s: Sequence[tuple[int, str]], cand_t: Sequence[tuple[int, str]],
                       groups: Sequence[frozenset[str]] = DEFAULT_SIMILARITY_GROUPS):
    """Yield every maximum-cardinality pairing of similar marks, as (s, t) tuples.

    ``cand_s``/``cand_t`` are (token index, surface) lists of the unlinked
    punctuation marks on each side.
    """
    by_class_s: dict = defaultdict(list)
    by_class_t: dict = defaultdict(list)
    for idx, surface in cand_s:
        by_class_s[mark_class(surface, groups)].append(idx)
    for idx, surface in cand_t:
        by_class_t[mark_class(surface, groups)].append(idx)
    classes = sorted(set(by_class_s) & set(by_class_t))
    per_class = [list(_class_pairings(by_class_s[c], by_class_t[c])) for c in classes]
    if not per_class:
        yield ()
        return
    for combo in product(*per_class):
        yield tuple(pair for class_pairs in combo for pair in class_pairs)


def unlinked_punctuation(vp: VersePair, a: Alignment, punct_set: Iterable[str] | None = None):
    """The punctuation tokens on each side not covered by a link or NT mark."""
    surfaces = frozenset(punct_set) if punct_set is not None else None

    def is_mark(tok):
        return tok.surface in surfaces if surfaces is not None else tok.kind == PUNCTUATION

    linked_s = {l.s for l in a.links}
    linked_t = {l.t for l in a.links}
    cand_s = [(t.index, t.surface) for t in vp.source_tokens
              if is_mark(t) and t.index not in linked_s and t.index not in a.nt_source]
    cand_t = [(t.index, t.surface) for t in vp.target_tokens
              if is_mark(t) and t.index not in linked_t and t.index not in a.nt_target]
    return cand_s, cand_t


def optimal_punct_links(vp: VersePair, a: Alignment, punct_set: Iterable[str] | None = None,
                        max_per_side: int = DEFAULT_MAX_PER_SIDE,
                        groups: Sequence[frozenset[str]] = DEFAULT_SIMILARITY_GROUPS) -> frozenset[Link]:
    """Pick punctuation links minimizing crossings over the existing links.

    Ties break to the lexicographically smallest link set, so the result is
    reproducible.  Raises PunctSearchBoundError when a side has more than
    ``max_per_side`` unlinked marks; such verses need manual linking.
    """
    cand_s, cand_t = unlinked_punctuation(vp, a, punct_set)
    if len(cand_s) > max_per_side or len(cand_t) > max_per_side:
        raise PunctSearchBoundError(
            f"{len(cand_s)} source / {len(cand_t)} target unlinked marks exceed the "
            f"exhaustive-search bound of {max_per_side} per side; link them manually")
    base = [(l.s, l.t) for l in a.links]
    best_key = None
    best: tuple = ()
    for pairing in enumerate_pairings(cand_s, cand_t, groups):
        added = 0
        for i, (s1, t1) in enumerate(pairing):
            for s2, t2 in base:
                if (s1 - s2) * (t1 - t2) < 0:
                    added += 1
            for s2, t2 in pairing[i + 1:]:
                if (s1 - s2) * (t1 - t2) < 0:
                    added += 1
        key = (added, tuple(sorted(pairing)))
        if best_key is None or key < best_key:
            best_key = key
            best = pairing
    return frozenset(Link(s, t) for s, t in best)


def minimal_total_crossings(vp: VersePair, a: Alignment, punct_set: Iterable[str] | None = None,
                            max_per_side: int = DEFAULT_MAX_PER_SIDE) -> tuple[int, frozenset[Link]]:
    """Best achievable crossing count over word links plus optimal punct links."""
    chosen = optimal_punct_links(vp, a, punct_set, max_per_side)
    total = crossing_count(list(a.links) + list(chosen))
    return total, chosen
