"""Tokens, verse pairs, and the retokenizer.

Verses are retokenized before annotation so that every linkable unit is its
own token: punctuation is detached, hyphenated words are split (the hyphen is
dropped), French contractions are expanded ("du" becomes "de le"), and English
possessive clitics are detached ("Lord's" becomes "Lord 's").  Every token
carries a character span back into the raw verse, so the original text is
always recoverable.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass
from typing import Iterable, Mapping

SOURCE = "source"
TARGET = "target"
SIDES = (SOURCE, TARGET)

WORD = "word"
PUNCTUATION = "punctuation"
EXPANDED = "expanded"

APOSTROPHES = ("'", "’")

DEFAULT_PUNCT_CHARS = frozenset(string.punctuation) | frozenset("«»…–—“”‘’¡¿")

# Contractions and elisions expanded during retokenization.  Keys are matched
# case-insensitively; an initial capital propagates to the first replacement.
DEFAULT_ELISIONS: dict[str, dict[str, tuple[str, ...]]] = {
    "fr": {
        "du": ("de", "le"),
        "des": ("de", "les"),
        "au": ("à", "le"),
        "aux": ("à", "les"),
        "l'": ("le",),
        "d'": ("de",),
        "j'": ("je",),
        "n'": ("ne",),
        "s'": ("se",),
        "c'": ("ce",),
        "qu'": ("que",),
        "m'": ("me",),
        "t'": ("te",),
    },
}


def normalize_surface(surface: str) -> str:
    """Lowercase and fold typographic apostrophes, for lexicon lookups."""
    return surface.lower().replace("’", "'")


class ElisionTable:
    """Per-language map from contraction surface to its replacement words."""

    def __init__(self, entries: Mapping[str, Mapping[str, Iterable[str]]]):
        self.entries: dict[str, dict[str, tuple[str, ...]]] = {}
        for lang, contractions in entries.items():
            table = {}
            for key, repl in contractions.items():
                repl = tuple(repl)
                if not repl or any(not r or r != r.strip() for r in repl):
                    raise ValueError(f"empty replacement for contraction {key!r} ({lang})")
                table[normalize_surface(key)] = repl
            self.entries[lang] = table

    @classmethod
    def default(cls) -> "ElisionTable":
        return cls(DEFAULT_ELISIONS)

    @classmethod
    def from_json(cls, path) -> "ElisionTable":
        """Load a user table from a JSON file: {lang: {contraction: [words]}}."""
        with open(path, encoding="utf-8") as f:
            return cls(json.load(f))

    def _for_lang(self, lang: str) -> dict[str, tuple[str, ...]]:
        table = self.entries.get(lang)
        if table is None:
            table = self.entries.get(lang.split("-")[0].lower(), {})
        return table

    def lookup(self, lang: str, surface: str) -> tuple[str, ...] | None:
        return self._for_lang(lang).get(normalize_surface(surface))

    def reverse(self, lang: str, surfaces: Iterable[str]) -> str | None:
        """Map an expanded surface sequence back to its contraction key."""
        wanted = tuple(normalize_surface(s) for s in surfaces)
        for key, repl in self._for_lang(lang).items():
            if tuple(normalize_surface(r) for r in repl) == wanted:
                return key
        return None


@dataclass(frozen=True)
class Token:
    """One surface word with its position and provenance in the raw verse."""

    index: int
    surface: str
    side: str
    span: tuple[int, int]
    kind: str = WORD

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"token surface must be non-empty without whitespace: {self.surface!r}")
        if self.side not in SIDES:
            raise ValueError(f"unknown side {self.side!r}")


def _scan_chunk(chunk: str, base: int, punct_chars: frozenset[str]):
    """Split one whitespace-delimited chunk into word runs and punctuation.

    Yields ("run"|"punct", surface, start, end).  Apostrophes never break a
    run (clitics and elisions are handled later); a hyphen joining two word
    characters is dropped, any other hyphen is ordinary punctuation.
    """
    parts = []
    run_start: int | None = None
    n = len(chunk)
    for i, ch in enumerate(chunk):
        if ch in punct_chars and ch not in APOSTROPHES:
            joining = (
                ch == "-"
                and run_start is not None
                and i + 1 < n
                and (chunk[i + 1] not in punct_chars or chunk[i + 1] in APOSTROPHES)
            )
            if run_start is not None:
                parts.append(("run", chunk[run_start:i], base + run_start, base + i))
                run_start = None
            if not joining:
                parts.append(("punct", ch, base + i, base + i + 1))
        elif run_start is None:
            run_start = i
    if run_start is not None:
        parts.append(("run", chunk[run_start:], base + run_start, base + n))
    return parts


def _emit_word(surface: str, span: tuple[int, int], lang: str, table: ElisionTable,
               punct_chars: frozenset[str], out: list):
    """Emit a word piece, expanding it through the elision table if listed."""
    repl = table.lookup(lang, surface)
    if repl is None:
        wordish = any(c not in punct_chars and c not in APOSTROPHES for c in surface)
        out.append((surface, span, WORD if wordish else PUNCTUATION))
        return
    surfaces = list(repl)
    if surface[0].isupper():
        surfaces[0] = surfaces[0][0].upper() + surfaces[0][1:]
    for s in surfaces:
        out.append((s, span, EXPANDED))


def _split_run(surface: str, start: int, lang: str, table: ElisionTable,
               punct_chars: frozenset[str], out: list):
    end = start + len(surface)
    if all(c in APOSTROPHES for c in surface):
        for k, ch in enumerate(surface):
            out.append((ch, (start + k, start + k + 1), PUNCTUATION))
        return
    is_en = lang.lower().startswith("en")
    if is_en and normalize_surface(surface) == "'s":
        # a clitic standing alone, e.g. when re-tokenizing "Lord 's"
        out.append((surface, (start, end), WORD))
        return
    rest, rest_start = surface, start
    # elision prefixes split at their apostrophe: "l'homme" -> "l'" + "homme"
    while True:
        pos = next((k for k, c in enumerate(rest) if c in APOSTROPHES), None)
        if pos is None or pos + 1 >= len(rest):
            break
        if table.lookup(lang, rest[: pos + 1]) is None:
            break
        _emit_word(rest[: pos + 1], (rest_start, rest_start + pos + 1), lang, table, punct_chars, out)
        rest = rest[pos + 1:]
        rest_start += pos + 1
    trailing = []
    if is_en:
        if len(rest) > 2 and normalize_surface(rest[-2:]) == "'s":
            trailing.append((rest[-2:], (rest_start + len(rest) - 2, rest_start + len(rest)), WORD))
            rest = rest[:-2]
        elif len(rest) > 1 and rest[-1] in APOSTROPHES and rest[-2] in ("s", "S"):
            # bare plural-possessive apostrophe: "brothers'" -> "brothers" + "'"
            trailing.append((rest[-1], (rest_start + len(rest) - 1, rest_start + len(rest)), WORD))
            rest = rest[:-1]
    if rest:
        _emit_word(rest, (rest_start, rest_start + len(rest)), lang, table, punct_chars, out)
    out.extend(trailing)


def tokenize(raw: str, lang: str, table: ElisionTable | None = None,
             side: str = SOURCE, punct_chars: frozenset[str] = DEFAULT_PUNCT_CHARS) -> list[Token]:
    """Retokenize one raw verse into an ordered, densely indexed token list.

    A pure function of its arguments; any string tokenizes (empty input gives
    an empty list).
    """
    table = table or ElisionTable.default()
    pieces: list[tuple[str, tuple[int, int], str]] = []
    for m in re.finditer(r"\S+", raw):
        for part_kind, part, start, end in _scan_chunk(m.group(), m.start(), punct_chars):
            if part_kind == "punct":
                pieces.append((part, (start, end), PUNCTUATION))
            else:
                _split_run(part, start, lang, table, punct_chars, pieces)
    return [Token(i, surface, side, span, kind) for i, (surface, span, kind) in enumerate(pieces)]


@dataclass(frozen=True)
class VersePair:
    """A pair of tokenized verses sharing an identifier; the annotation unit."""

    id: str
    source_lang: str
    target_lang: str
    source_raw: str
    target_raw: str
    source_tokens: tuple[Token, ...]
    target_tokens: tuple[Token, ...]

    @classmethod
    def build(cls, id: str, source_lang: str, target_lang: str,
              source_raw: str, target_raw: str, table: ElisionTable | None = None) -> "VersePair":
        table = table or ElisionTable.default()
        return cls(
            id=id,
            source_lang=source_lang,
            target_lang=target_lang,
            source_raw=source_raw,
            target_raw=target_raw,
            source_tokens=tuple(tokenize(source_raw, source_lang, table, side=SOURCE)),
            target_tokens=tuple(tokenize(target_raw, target_lang, table, side=TARGET)),
        )

    def tokens(self, side: str) -> tuple[Token, ...]:
        if side == SOURCE:
            return self.source_tokens
        if side == TARGET:
            return self.target_tokens
        raise ValueError(f"unknown side {side!r}")

    def lang(self, side: str) -> str:
        return self.source_lang if side == SOURCE else self.target_lang

    def side_len(self, side: str) -> int:
        return len(self.tokens(side))


def verify_tokenization(raw: str, tokens: Iterable[Token], lang: str,
                        table: ElisionTable | None = None) -> None:
    """Check the reconstruction invariants of a token list against its raw verse.

    Non-expanded tokens must read back verbatim at their spans, with spans
    disjoint and strictly increasing; expanded tokens must form groups sharing
    one span whose surfaces reverse-map to the contraction at that span.
    Raises ValueError on the first violation.
    """
    table = table or ElisionTable.default()
    tokens = list(tokens)
    prev_end = None
    for tok in tokens:
        if tok.kind == EXPANDED:
            continue
        start, end = tok.span
        if raw[start:end] != tok.surface:
            raise ValueError(f"token {tok.index} surface {tok.surface!r} != raw[{start}:{end}] {raw[start:end]!r}")
        if prev_end is not None and start < prev_end:
            raise ValueError(f"token {tok.index} span overlaps or regresses at {tok.span}")
        prev_end = end
    i = 0
    while i < len(tokens):
        if tokens[i].kind != EXPANDED:
            i += 1
            continue
        span = tokens[i].span
        group = []
        while i < len(tokens) and tokens[i].kind == EXPANDED and tokens[i].span == span:
            group.append(tokens[i].surface)
            i += 1
        contraction = table.reverse(lang, group)
        raw_piece = raw[span[0]:span[1]]
        if contraction is None or normalize_surface(raw_piece) != contraction:
            raise ValueError(f"expanded group {group!r} does not map back to raw piece {raw_piece!r}")


def verify_verse_pair(vp: VersePair, table: ElisionTable | None = None) -> None:
    """Run the tokenization invariants over both sides of a verse pair."""
    verify_tokenization(vp.source_raw, vp.source_tokens, vp.source_lang, table)
    verify_tokenization(vp.target_raw, vp.target_tokens, vp.target_lang, table)
