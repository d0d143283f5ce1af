"""One annotator's alignment of a verse pair, and the edit operations on it.

Alignments are immutable snapshots: every effective edit returns a new value
with the revision bumped, so concurrent readers can keep old snapshots.  "Not
Translated" is a per-token mark, kept mutually exclusive with links by the
edit operations themselves (a deserialized alignment may still violate this;
the linter's exclusivity rule re-checks it).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import BoundsError
from .tokens import SOURCE, TARGET, VersePair


@dataclass(frozen=True, order=True)
class Link:
    """An asserted correspondence between source token s and target token t."""

    s: int
    t: int


@dataclass(frozen=True)
class Alignment:
    verse_id: str
    annotator_id: str
    links: frozenset[Link] = frozenset()
    nt_source: frozenset[int] = frozenset()
    nt_target: frozenset[int] = frozenset()
    # metadata: not part of value equality, not serialized
    revision: int = field(default=0, compare=False)
    source_len: int | None = field(default=None, compare=False)
    target_len: int | None = field(default=None, compare=False)

    @classmethod
    def empty(cls, vp: VersePair, annotator_id: str) -> "Alignment":
        return cls(verse_id=vp.id, annotator_id=annotator_id,
                   source_len=len(vp.source_tokens), target_len=len(vp.target_tokens))

    def with_bounds(self, vp: VersePair) -> "Alignment":
        return replace(self, source_len=len(vp.source_tokens), target_len=len(vp.target_tokens))

    def linked(self, side: str) -> frozenset[int]:
        if side == SOURCE:
            return frozenset(l.s for l in self.links)
        return frozenset(l.t for l in self.links)

    def nt(self, side: str) -> frozenset[int]:
        return self.nt_source if side == SOURCE else self.nt_target

    def nt_exclusive(self) -> bool:
        """True iff no NT-marked index also occurs in a link."""
        return self.nt_source.isdisjoint(self.linked(SOURCE)) and self.nt_target.isdisjoint(self.linked(TARGET))


def _check_bounds(a: Alignment, side: str, index: int) -> None:
    bound = a.source_len if side == SOURCE else a.target_len
    if index < 0 or (bound is not None and index >= bound):
        raise BoundsError(side, index, bound if bound is not None else 0)


def toggle_link(a: Alignment, s: int, t: int) -> Alignment:
    """Flip the presence of link (s, t); adding it clears any NT mark on s or t."""
    _check_bounds(a, SOURCE, s)
    _check_bounds(a, TARGET, t)
    link = Link(s, t)
    if link in a.links:
        return replace(a, links=a.links - {link}, revision=a.revision + 1)
    return replace(a, links=a.links | {link},
                   nt_source=a.nt_source - {s}, nt_target=a.nt_target - {t},
                   revision=a.revision + 1)


def mark_not_translated(a: Alignment, side: str, index: int) -> Alignment:
    """Mark a token Not Translated, removing every link that touches it."""
    if side not in (SOURCE, TARGET):
        raise ValueError(f"unknown side {side!r}")
    _check_bounds(a, side, index)
    if index in a.nt(side):
        return a
    if side == SOURCE:
        links = frozenset(l for l in a.links if l.s != index)
        return replace(a, links=links, nt_source=a.nt_source | {index}, revision=a.revision + 1)
    links = frozenset(l for l in a.links if l.t != index)
    return replace(a, links=links, nt_target=a.nt_target | {index}, revision=a.revision + 1)


def block_link(a: Alignment, source_indices: Iterable[int], target_indices: Iterable[int]) -> Alignment:
    """Link two phrases as wholes: every source index to every target index."""
    S, T = frozenset(source_indices), frozenset(target_indices)
    if not S or not T:
        raise ValueError("block_link requires non-empty index sets on both sides")
    for s in S:
        _check_bounds(a, SOURCE, s)
    for t in T:
        _check_bounds(a, TARGET, t)
    links = a.links | frozenset(Link(s, t) for s in S for t in T)
    nt_s, nt_t = a.nt_source - S, a.nt_target - T
    if links == a.links and nt_s == a.nt_source and nt_t == a.nt_target:
        return a
    return replace(a, links=links, nt_source=nt_s, nt_target=nt_t, revision=a.revision + 1)


@dataclass(frozen=True)
class Component:
    """A connected group of links; a phrasal block when complete bipartite."""

    source_indices: frozenset[int]
    target_indices: frozenset[int]
    links: frozenset[Link]

    def is_complete(self) -> bool:
        return len(self.links) == len(self.source_indices) * len(self.target_indices)


def components(a: Alignment) -> list[Component]:
    """Partition the linked indices into connected components.

    Ordered by smallest source index, then smallest target index.
    """
    by_s: dict[int, list[Link]] = defaultdict(list)
    by_t: dict[int, list[Link]] = defaultdict(list)
    for link in a.links:
        by_s[link.s].append(link)
        by_t[link.t].append(link)
    seen: set[tuple[str, int]] = set()
    out = []
    for start in sorted(a.links):
        if (SOURCE, start.s) in seen:
            continue
        stack = [(SOURCE, start.s)]
        s_idx: set[int] = set()
        t_idx: set[int] = set()
        comp_links: set[Link] = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            side, idx = node
            if side == SOURCE:
                s_idx.add(idx)
                for link in by_s[idx]:
                    comp_links.add(link)
                    stack.append((TARGET, link.t))
            else:
                t_idx.add(idx)
                for link in by_t[idx]:
                    comp_links.add(link)
                    stack.append((SOURCE, link.s))
        out.append(Component(frozenset(s_idx), frozenset(t_idx), frozenset(comp_links)))
    out.sort(key=lambda c: (min(c.source_indices), min(c.target_indices)))
    return out


def crossing_count(links: Iterable) -> int:
    """Number of unordered link pairs whose source and target orders invert."""
    pairs = [(l.s, l.t) if isinstance(l, Link) else (l[0], l[1]) for l in links]
    n = 0
    for i in range(len(pairs)):
        s1, t1 = pairs[i]
        for j in range(i + 1, len(pairs)):
            s2, t2 = pairs[j]
            if (s1 - s2) * (t1 - t2) < 0:
                n += 1
    return n
