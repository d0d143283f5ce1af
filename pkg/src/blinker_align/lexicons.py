"""Word lists driving the guideline checks and variation categories.

These are surface lexicons, not a grammar: they let the linter spot two-part
French negation, possessive clitics, auxiliaries, and punctuation without any
parsing.  All entries are matched case-insensitively with typographic
apostrophes folded.  The lists can be replaced wholesale from a plain-text
config (one ``list_name <TAB> surface`` entry per line).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

from .errors import FormatError
from .tokens import DEFAULT_PUNCT_CHARS, normalize_surface

NEGATION_COMPANIONS = frozenset({"pas", "point", "rien", "jamais", "que"})

DEFAULT_NEGATION_HEAD: dict[str, frozenset[str]] = {
    "ne": NEGATION_COMPANIONS,
    "n'": NEGATION_COMPANIONS,
}

DEFAULT_ENGLISH_NEGATION = frozenset({"not", "never", "nothing", "no"})

DEFAULT_POSSESSIVE_MARKERS = frozenset({"'s", "'"})

# Punctuation surfaces for the crossing check; excludes the apostrophes so
# possessive markers are never treated as linkable punctuation marks.
DEFAULT_PUNCTUATION = frozenset(DEFAULT_PUNCT_CHARS) - {"'", "’"}

DEFAULT_AUXILIARIES: dict[str, frozenset[str]] = {
    "en": frozenset({
        "be", "am", "is", "are", "was", "were", "been", "being",
        "have", "has", "had", "having",
        "do", "does", "did",
        "will", "would", "shall", "should", "may", "might", "must", "can", "could",
    }),
    "fr": frozenset({
        # être
        "être", "suis", "es", "est", "sommes", "êtes", "sont",
        "étais", "était", "étions", "étiez", "étaient",
        "fus", "fut", "fûmes", "fûtes", "furent",
        "serai", "seras", "sera", "serons", "serez", "seront",
        "serais", "serait", "serions", "seriez", "seraient",
        "sois", "soit", "soyons", "soyez", "soient", "été", "étant",
        # avoir
        "avoir", "ai", "as", "a", "avons", "avez", "ont",
        "avais", "avait", "avions", "aviez", "avaient",
        "eus", "eut", "eûmes", "eûtes", "eurent",
        "aurai", "auras", "aura", "aurons", "aurez", "auront",
        "aurais", "aurait", "aurions", "auriez", "auraient",
        "aie", "aies", "ait", "ayons", "ayez", "aient", "eu", "ayant",
    }),
}

DEFAULT_DETERMINERS: dict[str, frozenset[str]] = {
    "en": frozenset({"the", "a", "an", "this", "that", "these", "those",
                     "my", "thy", "his", "her", "its", "our", "your", "their"}),
    "fr": frozenset({"le", "la", "les", "un", "une", "ce", "cet", "cette", "ces",
                     "mon", "ton", "son", "ma", "ta", "sa", "mes", "tes", "ses",
                     "notre", "votre", "leur", "nos", "vos", "leurs"}),
}

_LIST_NAMES = ("negation_head", "negation_companion", "english_negation",
               "possessive_marker", "punctuation", "auxiliary_en", "auxiliary_fr",
               "determiner_en", "determiner_fr")


@dataclass(frozen=True)
class Lexicons:
    negation_head: Mapping[str, frozenset[str]] = field(default_factory=lambda: dict(DEFAULT_NEGATION_HEAD))
    english_negation: frozenset[str] = DEFAULT_ENGLISH_NEGATION
    possessive_markers: frozenset[str] = DEFAULT_POSSESSIVE_MARKERS
    punctuation: frozenset[str] = DEFAULT_PUNCTUATION
    auxiliaries: Mapping[str, frozenset[str]] = field(default_factory=lambda: dict(DEFAULT_AUXILIARIES))
    determiners: Mapping[str, frozenset[str]] = field(default_factory=lambda: dict(DEFAULT_DETERMINERS))

    def __post_init__(self):
        for name in ("negation_head", "english_negation", "possessive_markers", "punctuation"):
            if not getattr(self, name):
                raise ValueError(f"lexicon list {name} must not be empty")
        if self.possessive_markers & self.punctuation:
            raise ValueError("possessive markers must stay out of the punctuation list")

    @classmethod
    def default(cls) -> "Lexicons":
        return cls()

    def negation_companions(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for companions in self.negation_head.values():
            out |= companions
        return out

    def _per_lang(self, table: Mapping[str, frozenset[str]], lang: str) -> frozenset[str]:
        return table.get(lang, table.get(lang.split("-")[0].lower(), frozenset()))

    def auxiliaries_for(self, lang: str) -> frozenset[str]:
        return self._per_lang(self.auxiliaries, lang)

    def determiners_for(self, lang: str) -> frozenset[str]:
        return self._per_lang(self.determiners, lang)

    @classmethod
    def from_config(cls, stream: IO[str] | Iterable[str]) -> "Lexicons":
        """Build lexicons from ``list_name <TAB> surface`` lines.

        Recognized list names: negation_head, negation_companion,
        english_negation, possessive_marker, punctuation, auxiliary_en,
        auxiliary_fr, determiner_en, determiner_fr.
        """
        lists: dict[str, set[str]] = {name: set() for name in _LIST_NAMES}
        for lineno, line in enumerate(stream, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError("expected `list_name<TAB>surface`", line=lineno)
            name, surface = parts
            if name not in lists:
                raise FormatError(f"unknown lexicon list {name!r}", line=lineno)
            lists[name].add(normalize_surface(surface))
        companions = frozenset(lists["negation_companion"]) or NEGATION_COMPANIONS
        heads = lists["negation_head"] or set(DEFAULT_NEGATION_HEAD)
        return cls(
            negation_head={h: companions for h in sorted(heads)},
            english_negation=frozenset(lists["english_negation"]) or DEFAULT_ENGLISH_NEGATION,
            possessive_markers=frozenset(lists["possessive_marker"]) or DEFAULT_POSSESSIVE_MARKERS,
            punctuation=frozenset(lists["punctuation"]) or DEFAULT_PUNCTUATION,
            auxiliaries={
                "en": frozenset(lists["auxiliary_en"]) or DEFAULT_AUXILIARIES["en"],
                "fr": frozenset(lists["auxiliary_fr"]) or DEFAULT_AUXILIARIES["fr"],
            },
            determiners={
                "en": frozenset(lists["determiner_en"]) or DEFAULT_DETERMINERS["en"],
                "fr": frozenset(lists["determiner_fr"]) or DEFAULT_DETERMINERS["fr"],
            },
        )
