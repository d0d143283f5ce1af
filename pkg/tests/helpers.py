"""Shared test data builders and independent brute-force oracles.

The oracles here deliberately re-derive results with the dumbest possible
code (explicit loops, full recounts, generate-and-filter enumeration) so the
library implementations are checked against something that cannot share
their shortcuts.
"""

from __future__ import annotations

import itertools
import random

from blinker_align import Alignment, Link, VersePair
from blinker_align.punctuation import DEFAULT_SIMILARITY_GROUPS
from blinker_align.tokens import PUNCTUATION

EN_WORDS = [
    "and", "he", "said", "the", "Lord", "will", "give", "it", "me", "thy",
    "wages", "vineyard", "husbandman", "keeper", "word", "brothers", "people",
    "land", "king", "son", "day", "house", "water", "not", "never", "planted",
    "began", "appoint", "spoke", "earth",
]
EN_SPECIAL = ["Lord's", "brothers'", "sons'", "king's", "vine-dresser", "stiff-necked"]
FR_WORDS = [
    "et", "il", "dit", "le", "seigneur", "donnera", "moi", "ton", "salaire",
    "vigne", "terre", "gardien", "parole", "peuple", "pays", "roi", "fils",
    "jour", "maison", "eau", "ne", "pas", "planta", "devant", "selon",
]
FR_SPECIAL = ["du", "des", "au", "aux", "Du", "Au", "l'homme", "d'eau", "qu'il",
              "n'est", "c'est", "s'en", "j'ai", "m'a", "t'en", "aujourd'hui"]
MARKS = [",", ".", ";", ":", "!", "?", "\"", "«", "»", "(", ")"]


def random_raw(rng: random.Random, lang: str) -> str:
    words, special = (EN_WORDS, EN_SPECIAL) if lang == "en" else (FR_WORDS, FR_SPECIAL)
    n = rng.randint(1, 12)
    pieces = []
    for _ in range(n):
        roll = rng.random()
        if roll < 0.15:
            piece = rng.choice(special)
        elif roll < 0.25:
            piece = rng.choice(MARKS)
        else:
            piece = rng.choice(words)
        if rng.random() < 0.2 and piece not in MARKS:
            piece += rng.choice([",", ".", "!", "?", ":", ";"])
        if rng.random() < 0.05:
            piece = "(" + piece + ")"
        pieces.append(piece)
    sep = "  " if rng.random() < 0.1 else " "
    return sep.join(pieces)


def random_verse_pair(rng: random.Random, i: int = 0) -> VersePair:
    return VersePair.build(f"V{i:05d}", "en", "fr",
                           random_raw(rng, "en"), random_raw(rng, "fr"))


def random_alignment(rng: random.Random, ns: int, nt: int, verse_id: str = "V00000",
                     annotator_id: str = "a1") -> Alignment:
    """A structurally valid alignment: in-bounds, NT marks disjoint from links."""
    links = set()
    if ns and nt:
        for _ in range(rng.randint(0, min(12, ns * nt))):
            links.add(Link(rng.randrange(ns), rng.randrange(nt)))
    linked_s = {l.s for l in links}
    linked_t = {l.t for l in links}
    nt_s = {s for s in range(ns) if s not in linked_s and rng.random() < 0.3}
    nt_t = {t for t in range(nt) if t not in linked_t and rng.random() < 0.3}
    return Alignment(verse_id, annotator_id, frozenset(links),
                     frozenset(nt_s), frozenset(nt_t),
                     source_len=ns, target_len=nt)


# -- oracles -----------------------------------------------------------------

def oracle_atoms(a: Alignment) -> set:
    out = set()
    for link in a.links:
        out.add((link.s, link.t))
    for s in a.nt_source:
        out.add((s, None))
    for t in a.nt_target:
        out.add((None, t))
    return out


def oracle_prf(a: Alignment, b: Alignment):
    sa, sb = oracle_atoms(a), oracle_atoms(b)
    inter = 0
    for atom in sa:
        if atom in sb:
            inter += 1
    p = inter / len(sa) if sa else 1.0
    r = inter / len(sb) if sb else 1.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def oracle_vote_table(alignments) -> dict:
    counts: dict = {}
    for a in alignments:
        for atom in oracle_atoms(a):
            counts[atom] = counts.get(atom, 0) + 1
    return counts


def oracle_crossings(pairs) -> int:
    pairs = [(p.s, p.t) if isinstance(p, Link) else tuple(p) for p in pairs]
    n = 0
    for (s1, t1), (s2, t2) in itertools.combinations(pairs, 2):
        if (s1 < s2 and t1 > t2) or (s1 > s2 and t1 < t2):
            n += 1
    return n


def _mark_class_of(surface: str, groups) -> frozenset:
    for g in groups:
        if surface in g:
            return g
    return frozenset({surface})


def _all_injective_pairings(src, tgt):
    """Every injective pairing of every size, by plain recursion."""
    if not src or not tgt:
        return [()]
    head, rest = src[0], src[1:]
    out = []
    for sub in _all_injective_pairings(rest, tgt):
        out.append(sub)  # head unpaired
        used = {t for _, t in sub}
        for t in tgt:
            if t not in used:
                out.append(((head, t),) + sub)
    return out


def oracle_min_total_crossings(vp: VersePair, a: Alignment,
                               groups=DEFAULT_SIMILARITY_GROUPS) -> int:
    """Exhaustive minimum crossings over word links plus one maximum-size
    pairing of similar unlinked marks per similarity class."""
    linked_s = {l.s for l in a.links}
    linked_t = {l.t for l in a.links}
    cand_s = [t for t in vp.source_tokens if t.kind == PUNCTUATION
              and t.index not in linked_s and t.index not in a.nt_source]
    cand_t = [t for t in vp.target_tokens if t.kind == PUNCTUATION
              and t.index not in linked_t and t.index not in a.nt_target]
    per_class = []
    classes = {_mark_class_of(t.surface, groups) for t in cand_s} \
        | {_mark_class_of(t.surface, groups) for t in cand_t}
    for cls in classes:
        src = [t.index for t in cand_s if _mark_class_of(t.surface, groups) == cls]
        tgt = [t.index for t in cand_t if _mark_class_of(t.surface, groups) == cls]
        if not src or not tgt:
            continue
        pairings = _all_injective_pairings(src, tgt)
        top = max(len(p) for p in pairings)
        per_class.append([p for p in pairings if len(p) == top])
    base = [(l.s, l.t) for l in a.links]
    best = None
    for combo in itertools.product(*per_class) if per_class else [()]:
        full = base + [pair for pairing in combo for pair in pairing]
        total = oracle_crossings(full)
        if best is None or total < best:
            best = total
    return best if best is not None else oracle_crossings(base)
