"""Guideline checks over a single alignment.

Each rule mechanizes one instruction from the annotation style guide and
produces findings anchored to tokens.  Structural rules (coverage, NT
exclusivity, negation pairing) are errors; lexicon heuristics (block closure,
punctuation crossings, possessive separation) are warnings; the auxiliary
suggestion is informational and never blocks anything.  Guide instructions
that need real linguistic judgment (idioms, pronoun descriptions, resumptive
pronouns, passivization, divergent prepositions) are deliberately not rules:
a heuristic that cannot be trusted should not speak with a linter's voice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import Alignment, components, crossing_count
from .errors import PunctSearchBoundError, UnknownRuleError, VerseMismatchError
from .lexicons import Lexicons
from .punctuation import optimal_punct_links
from .tokens import SOURCE, TARGET, VersePair, normalize_surface

ERROR = "error"
WARNING = "warning"
INFO = "info"

R1_COMPLETENESS = "R1_COMPLETENESS"
R2_NT_EXCLUSIVITY = "R2_NT_EXCLUSIVITY"
R3_NEGATION_PAIR = "R3_NEGATION_PAIR"
R4_BLOCK_CLOSURE = "R4_BLOCK_CLOSURE"
R5_PUNCT_CROSSING = "R5_PUNCT_CROSSING"
R6_POSSESSIVE_SEP = "R6_POSSESSIVE_SEP"
R7_AUX_ATTACH = "R7_AUX_ATTACH"

# rule id -> (severity, guideline tag, one-line statement shown to annotators)
RULE_CATALOG: dict[str, tuple[str, str, str]] = {
    R1_COMPLETENESS: (ERROR, "coverage", "Every token must be linked or marked Not Translated."),
    R2_NT_EXCLUSIVITY: (ERROR, "not-translated", "A token marked Not Translated must not carry any link."),
    R3_NEGATION_PAIR: (ERROR, "negation", "Both pieces of a two-part negation must be linked to the same tokens on the other side."),
    R4_BLOCK_CLOSURE: (WARNING, "phrasal-correspondence", "A phrase-to-phrase block must link every word in one phrase to every word in the other."),
    R5_PUNCT_CROSSING: (WARNING, "punctuation-series", "Punctuation marks should be paired so the links cross as little as possible."),
    R6_POSSESSIVE_SEP: (WARNING, "possessives", "A possessive marker must be linked separately from its noun."),
    R7_AUX_ATTACH: (INFO, "auxiliaries", "When auxiliaries have no counterpart, link them together with their main verb."),
}

RULE_ORDER = (R1_COMPLETENESS, R2_NT_EXCLUSIVITY, R3_NEGATION_PAIR, R4_BLOCK_CLOSURE,
              R5_PUNCT_CROSSING, R6_POSSESSIVE_SEP, R7_AUX_ATTACH)


@dataclass(frozen=True)
class LintFinding:
    rule_id: str
    severity: str
    tokens: tuple[tuple[str, int], ...]
    message: str
    guideline: str

    def to_json(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "severity": self.severity,
            "tokens": [list(t) for t in self.tokens],
            "message": self.message,
            "guideline": self.guideline,
        }

    @classmethod
    def from_json(cls, d: dict) -> "LintFinding":
        return cls(d["rule_id"], d["severity"], tuple((s, i) for s, i in d["tokens"]),
                   d["message"], d["guideline"])


def _finding(rule_id: str, tokens, message: str) -> LintFinding:
    severity, guideline, _ = RULE_CATALOG[rule_id]
    return LintFinding(rule_id, severity, tuple(tokens), message, guideline)


def _surface(vp: VersePair, side: str, index: int) -> str:
    return vp.tokens(side)[index].surface


def _links_of(a: Alignment, side: str):
    """index -> frozenset of linked indices on the opposite side."""
    table: dict[int, set[int]] = {}
    for link in a.links:
        mine, other = (link.s, link.t) if side == SOURCE else (link.t, link.s)
        table.setdefault(mine, set()).add(other)
    return {i: frozenset(v) for i, v in table.items()}


def _check_r1(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    out = []
    for side in (SOURCE, TARGET):
        covered = a.linked(side) | a.nt(side)
        for tok in vp.tokens(side):
            if tok.index not in covered:
                out.append(_finding(R1_COMPLETENESS, [(side, tok.index)],
                                    f"{side} token {tok.index} {tok.surface!r} is neither linked nor marked Not Translated"))
    return out


def _check_r2(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    out = []
    for side in (SOURCE, TARGET):
        for index in sorted(a.nt(side) & a.linked(side)):
            out.append(_finding(R2_NT_EXCLUSIVITY, [(side, index)],
                                f"{side} token {index} {_surface(vp, side, index)!r} is marked Not Translated but still linked"))
    return out


def _french_side(vp: VersePair) -> str | None:
    if vp.source_lang.lower().startswith("fr"):
        return SOURCE
    if vp.target_lang.lower().startswith("fr"):
        return TARGET
    return None


def _check_r3(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    side = _french_side(vp)
    if side is None:
        return []
    links = _links_of(a, side)
    toks = vp.tokens(side)
    surfaces = [normalize_surface(t.surface) for t in toks]
    companions_all = lex.negation_companions()
    out = []
    for i, surface in enumerate(surfaces):
        linked_here = links.get(i, frozenset())
        if surface in lex.negation_head and linked_here:
            companions = [j for j in range(i + 1, len(toks))
                          if surfaces[j] in lex.negation_head[surface]]
            if companions and not any(links.get(j) == linked_here for j in companions):
                named = next((j for j in companions if not links.get(j)), companions[0])
                out.append(_finding(R3_NEGATION_PAIR, [(side, i), (side, named)],
                                    f"negation {toks[i].surface!r} is linked but its companion "
                                    f"{toks[named].surface!r} is not linked to the same tokens"))
        if surface in companions_all and linked_here:
            heads = [h for h in range(i)
                     if surfaces[h] in lex.negation_head and surface in lex.negation_head[surfaces[h]]]
            if heads and not any(links.get(h) == linked_here for h in heads):
                named = next((h for h in reversed(heads) if not links.get(h)), heads[-1])
                out.append(_finding(R3_NEGATION_PAIR, [(side, i), (side, named)],
                                    f"negation companion {toks[i].surface!r} is linked but the head "
                                    f"{toks[named].surface!r} is not linked to the same tokens"))
    return out


def _check_r4(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    out = []
    for comp in components(a):
        ns, nt = len(comp.source_indices), len(comp.target_indices)
        if ns > 1 and nt > 1 and not comp.is_complete():
            tokens = [(SOURCE, i) for i in sorted(comp.source_indices)]
            tokens += [(TARGET, j) for j in sorted(comp.target_indices)]
            out.append(_finding(R4_BLOCK_CLOSURE, tokens,
                                f"{ns}x{nt} block carries {len(comp.links)} of {ns * nt} links; "
                                f"phrases linked as wholes need every word-to-word link"))
    return out


def _check_r5(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    punct_s = {t.index for t in vp.source_tokens if normalize_surface(t.surface) in lex.punctuation}
    punct_t = {t.index for t in vp.target_tokens if normalize_surface(t.surface) in lex.punctuation}
    mark_links = frozenset(l for l in a.links if l.s in punct_s and l.t in punct_t)
    background = Alignment(a.verse_id, a.annotator_id, a.links - mark_links,
                           a.nt_source, a.nt_target,
                           source_len=len(vp.source_tokens), target_len=len(vp.target_tokens))
    try:
        best = optimal_punct_links(vp, background, lex.punctuation)
    except PunctSearchBoundError:
        return []
    submitted = crossing_count(a.links)
    achievable = crossing_count(list(background.links) + list(best))
    if submitted <= achievable:
        return []
    suggestion = " ".join(f"{l.s}-{l.t}" for l in sorted(best))
    return [_finding(R5_PUNCT_CROSSING, [],
                     f"punctuation links produce {submitted} crossings but {achievable} is achievable "
                     f"(e.g. mark pairing {suggestion or 'none'})")]


def _check_r6(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    out = []
    for side in (SOURCE, TARGET):
        links = _links_of(a, side)
        for tok in vp.tokens(side):
            if normalize_surface(tok.surface) not in lex.possessive_markers or tok.index == 0:
                continue
            marker_links = links.get(tok.index, frozenset())
            if marker_links and marker_links <= links.get(tok.index - 1, frozenset()):
                out.append(_finding(R6_POSSESSIVE_SEP, [(side, tok.index), (side, tok.index - 1)],
                                    f"possessive marker {tok.surface!r} shares all its links with its noun "
                                    f"{_surface(vp, side, tok.index - 1)!r}; link it separately"))
    return out


def _check_r7(vp: VersePair, a: Alignment, lex: Lexicons) -> list[LintFinding]:
    out = []
    for comp in components(a):
        for side, other in ((SOURCE, TARGET), (TARGET, SOURCE)):
            mine = comp.source_indices if side == SOURCE else comp.target_indices
            theirs = comp.target_indices if side == SOURCE else comp.source_indices
            if len(theirs) != 1:
                continue
            aux = lex.auxiliaries_for(vp.lang(side))
            if not aux or not all(normalize_surface(_surface(vp, side, i)) in aux for i in mine):
                continue
            other_idx = next(iter(theirs))
            other_surface = normalize_surface(_surface(vp, other, other_idx))
            if other_surface in lex.auxiliaries_for(vp.lang(other)) or other_surface in lex.punctuation:
                continue
            tokens = [(side, i) for i in sorted(mine)] + [(other, other_idx)]
            out.append(_finding(R7_AUX_ATTACH, tokens,
                                f"only auxiliaries are linked to {_surface(vp, other, other_idx)!r}; "
                                f"consider including their main verb in the link"))
    return out


_CHECKS = {
    R1_COMPLETENESS: _check_r1,
    R2_NT_EXCLUSIVITY: _check_r2,
    R3_NEGATION_PAIR: _check_r3,
    R4_BLOCK_CLOSURE: _check_r4,
    R5_PUNCT_CROSSING: _check_r5,
    R6_POSSESSIVE_SEP: _check_r6,
    R7_AUX_ATTACH: _check_r7,
}


def check_rule(rule_id: str, vp: VersePair, a: Alignment, lex: Lexicons | None = None) -> list[LintFinding]:
    """Run a single rule; ``lint`` equals the concatenation over all rules."""
    if rule_id not in _CHECKS:
        raise UnknownRuleError(f"unknown rule id {rule_id!r}")
    if a.verse_id != vp.id:
        raise VerseMismatchError(f"alignment is for verse {a.verse_id!r}, not {vp.id!r}")
    return _CHECKS[rule_id](vp, a, lex or Lexicons.default())


def lint(vp: VersePair, a: Alignment, lex: Lexicons | None = None) -> list[LintFinding]:
    """All rule checks in rule order; an empty list means a clean alignment."""
    if a.verse_id != vp.id:
        raise VerseMismatchError(f"alignment is for verse {a.verse_id!r}, not {vp.id!r}")
    lex = lex or Lexicons.default()
    out: list[LintFinding] = []
    for rule_id in RULE_ORDER:
        out.extend(_CHECKS[rule_id](vp, a, lex))
    return out
