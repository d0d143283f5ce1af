"""Inter-annotator agreement and majority-vote adjudication.

An alignment is compared as a set of atoms: one atom per link plus one atom
per Not-Translated mark.  Precision/recall/F1 over atom sets is the agreement
measure; the vote keeps every atom that strictly more than ``threshold * n``
of the n panels contain, then repairs exclusivity conflicts in favour of
links.  Tokens that some annotator covered but the voted alignment does not
are reported as unresolved so an adjudicator can look at exactly those.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .alignment import Alignment, Link
from .lexicons import Lexicons
from .tokens import SOURCE, TARGET, VersePair, normalize_surface

# An atom is (s, t) for a link, (s, None) for a source NT mark and
# (None, t) for a target NT mark.
Atom = tuple  # tuple[int | None, int | None]


def atoms(a: Alignment) -> frozenset:
    out = {(l.s, l.t) for l in a.links}
    out |= {(s, None) for s in a.nt_source}
    out |= {(None, t) for t in a.nt_target}
    return frozenset(out)


def from_atoms(verse_id: str, annotator_id: str, atom_set, **kwargs) -> Alignment:
    links, nt_s, nt_t = set(), set(), set()
    for s, t in atom_set:
        if s is None:
            nt_t.add(t)
        elif t is None:
            nt_s.add(s)
        else:
            links.add(Link(s, t))
    return Alignment(verse_id, annotator_id, frozenset(links), frozenset(nt_s),
                     frozenset(nt_t), **kwargs)


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    def to_json(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def compare(a: Alignment, b: Alignment) -> PRF:
    """Agreement of ``a`` against ``b`` as reference.

    Empty sides score 1.0 by convention so that two empty annotations agree
    perfectly rather than dividing by zero.
    """
    sa, sb = atoms(a), atoms(b)
    inter = len(sa & sb)
    p = inter / len(sa) if sa else 1.0
    r = inter / len(sb) if sb else 1.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return PRF(p, r, f)


@dataclass(frozen=True)
class AnnotationSet:
    """Several annotators' alignments of one verse."""

    verse_id: str
    alignments: tuple

    def __post_init__(self):
        if not self.alignments:
            raise ValueError("an annotation set needs at least one alignment")
        ids = [a.annotator_id for a in self.alignments]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate annotator in set for verse {self.verse_id!r}")
        for a in self.alignments:
            if a.verse_id != self.verse_id:
                raise ValueError(f"alignment for verse {a.verse_id!r} in set for {self.verse_id!r}")

    def __len__(self):
        return len(self.alignments)

    def annotators(self) -> list:
        return [a.annotator_id for a in self.alignments]

    def by_annotator(self, annotator_id: str) -> Alignment:
        for a in self.alignments:
            if a.annotator_id == annotator_id:
                return a
        raise KeyError(annotator_id)


@dataclass(frozen=True)
class AgreementReport:
    verse_id: str
    annotators: tuple
    pairwise: dict = field(compare=False)  # (annot_a, annot_b) -> PRF, both orders
    mean_f1: float = 0.0

    def to_json(self) -> dict:
        return {
            "verse_id": self.verse_id,
            "annotators": list(self.annotators),
            "pairwise": [
                {"a": a, "b": b, **prf.to_json()} for (a, b), prf in sorted(self.pairwise.items())
            ],
            "mean_f1": self.mean_f1,
        }


def agreement_report(annotations: AnnotationSet) -> AgreementReport:
    pairwise = {}
    f1s = []
    for a, b in itertools.permutations(annotations.alignments, 2):
        prf = compare(a, b)
        pairwise[(a.annotator_id, b.annotator_id)] = prf
        if a.annotator_id < b.annotator_id:
            f1s.append(prf.f1)
    mean = sum(f1s) / len(f1s) if f1s else 1.0
    return AgreementReport(annotations.verse_id, tuple(annotations.annotators()),
                           pairwise, mean)


def pairwise_symmetry_check(report_or_set) -> bool:
    """Precision of (a, b) must equal recall of (b, a) exactly."""
    pairwise = report_or_set.pairwise if isinstance(report_or_set, AgreementReport) \
        else agreement_report(report_or_set).pairwise
    for (a, b), prf in pairwise.items():
        if prf.precision != pairwise[(b, a)].recall:
            return False
    return True


def vote_table(annotations: AnnotationSet) -> dict:
    """atom -> number of annotators whose alignment contains it."""
    counts: dict = {}
    for a in annotations.alignments:
        for atom in atoms(a):
            counts[atom] = counts.get(atom, 0) + 1
    return counts


@dataclass(frozen=True)
class VoteOutcome:
    gold: Alignment
    unresolved: tuple  # ((side, index), ...) sorted, source first

    def to_json(self) -> dict:
        return {
            "gold": sorted_atom_strings(atoms(self.gold)),
            "unresolved": [list(t) for t in self.unresolved],
        }


def _covered(atom_set) -> set:
    out = set()
    for s, t in atom_set:
        if s is not None:
            out.add((SOURCE, s))
        if t is not None:
            out.add((TARGET, t))
    return out


def majority_vote(annotations: AnnotationSet, threshold: float = 0.5) -> VoteOutcome:
    """Keep atoms supported by strictly more than ``threshold * n`` panels.

    Ties at exactly the threshold (e.g. 2 of 4 at 0.5) are excluded, which is
    what pushes genuinely split decisions into the unresolved list. When the
    vote keeps both a link and an NT mark on the same token, the link wins and
    the mark is dropped.
    """
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must be in [0, 1), got {threshold}")
    n = len(annotations)
    counts = vote_table(annotations)
    kept = {atom for atom, c in counts.items() if c > threshold * n}

    linked_s = {s for s, t in kept if s is not None and t is not None}
    linked_t = {t for s, t in kept if s is not None and t is not None}
    kept = {(s, t) for s, t in kept
            if not (t is None and s in linked_s) and not (s is None and t in linked_t)}

    gold = from_atoms(annotations.verse_id, "gold", kept)
    seen = set()
    for a in annotations.alignments:
        seen |= _covered(atoms(a))
    unresolved = tuple(sorted(seen - _covered(kept), key=lambda x: (x[0] != SOURCE, x[1])))
    return VoteOutcome(gold, unresolved)


def sorted_atom_strings(atom_set) -> list:
    from .alignment_io import atom_to_string, sort_atoms
    return [atom_to_string(a) for a in sort_atoms(atom_set)]


# -- variation categorization -------------------------------------------------

NEGATION_CATEGORY = "negation"
PUNCTUATION_CATEGORY = "punctuation"
POSSESSIVE_CATEGORY = "possessive"
AUXILIARY_CATEGORY = "auxiliary"
DETERMINER_CATEGORY = "determiner"
UNCATEGORIZED = "uncategorized"

CATEGORY_ORDER = (NEGATION_CATEGORY, PUNCTUATION_CATEGORY, POSSESSIVE_CATEGORY,
                  AUXILIARY_CATEGORY, DETERMINER_CATEGORY, UNCATEGORIZED)


def _token_category(vp: VersePair, side: str, index: int, lex: Lexicons) -> str:
    surface = normalize_surface(vp.tokens(side)[index].surface)
    lang = vp.lang(side)
    if surface in lex.negation_head or surface in lex.negation_companions() \
            or (lang.lower().startswith("en") and surface in lex.english_negation):
        return NEGATION_CATEGORY
    if surface in lex.punctuation:
        return PUNCTUATION_CATEGORY
    if surface in lex.possessive_markers:
        return POSSESSIVE_CATEGORY
    if surface in lex.auxiliaries_for(lang):
        return AUXILIARY_CATEGORY
    if surface in lex.determiners_for(lang):
        return DETERMINER_CATEGORY
    return UNCATEGORIZED


def atom_category(vp: VersePair, atom, lex: Lexicons | None = None) -> str:
    """Most specific category of the tokens an atom touches.

    Priority follows CATEGORY_ORDER so a link between a negation particle and
    a comma counts as negation variation, not punctuation.
    """
    lex = lex or Lexicons.default()
    cats = set()
    s, t = atom
    if s is not None:
        cats.add(_token_category(vp, SOURCE, s, lex))
    if t is not None:
        cats.add(_token_category(vp, TARGET, t, lex))
    for cat in CATEGORY_ORDER:
        if cat in cats:
            return cat
    return UNCATEGORIZED


def variation_report(vp: VersePair, annotations: AnnotationSet,
                     lex: Lexicons | None = None) -> dict:
    """category -> count of contested atoms (in some panels but not all)."""
    lex = lex or Lexicons.default()
    n = len(annotations)
    counts = vote_table(annotations)
    out = {cat: 0 for cat in CATEGORY_ORDER}
    for atom, c in counts.items():
        if 0 < c < n:
            out[atom_category(vp, atom, lex)] += 1
    return out
