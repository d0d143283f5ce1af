"""Reading and writing the alignment exchange format.

One line per (verse, annotator):

    verse_id <TAB> annotator_id <TAB> atom [atom ...]

Atoms are ``s-t`` for links, ``s-∅`` for a source token with no
translation and ``∅-t`` for a target one.  Writers emit atoms in
canonical order — links ascending by (source, target), then source marks,
then target marks — so that equal alignments serialize to identical bytes.
Files are UTF-8 with LF line endings.
"""

from __future__ import annotations

import io
from typing import Iterable

from .alignment import Alignment, Link
from .errors import DuplicateIdError, FormatError

EMPTY_MARK = "∅"

Atom = tuple  # tuple[int | None, int | None]


def sort_atoms(atom_set) -> list:
    links = sorted((s, t) for s, t in atom_set if s is not None and t is not None)
    nt_s = sorted((s, t) for s, t in atom_set if t is None)
    nt_t = sorted((s, t) for s, t in atom_set if s is None)
    return links + nt_s + nt_t


def atom_to_string(atom) -> str:
    s, t = atom
    if s is None and t is None:
        raise ValueError("atom needs at least one index")
    left = EMPTY_MARK if s is None else str(s)
    right = EMPTY_MARK if t is None else str(t)
    return f"{left}-{right}"


def parse_atom(text: str, line: int | None = None) -> Atom:
    left, sep, right = text.partition("-")
    if not sep or not left or not right:
        raise FormatError(f"malformed atom {text!r}", line=line)
    try:
        s = None if left == EMPTY_MARK else int(left)
        t = None if right == EMPTY_MARK else int(right)
    except ValueError:
        raise FormatError(f"malformed atom {text!r}", line=line) from None
    if s is None and t is None:
        raise FormatError(f"atom {text!r} has no token on either side", line=line)
    if (s is not None and s < 0) or (t is not None and t < 0):
        raise FormatError(f"negative index in atom {text!r}", line=line)
    return (s, t)


def alignment_to_line(a: Alignment) -> str:
    from .agreement import atoms
    parts = [atom_to_string(x) for x in sort_atoms(atoms(a))]
    return "\t".join([a.verse_id, a.annotator_id, " ".join(parts)])


def parse_alignment_line(line: str, lineno: int | None = None) -> Alignment:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 3:
        raise FormatError(f"expected 3 tab-separated fields, got {len(fields)}", line=lineno)
    verse_id, annotator_id, atom_field = fields
    if not verse_id or not annotator_id:
        raise FormatError("empty verse or annotator id", line=lineno)
    links, nt_s, nt_t = set(), set(), set()
    for chunk in atom_field.split():
        s, t = parse_atom(chunk, line=lineno)
        if s is None:
            nt_t.add(t)
        elif t is None:
            nt_s.add(s)
        else:
            links.add(Link(s, t))
    return Alignment(verse_id, annotator_id, frozenset(links), frozenset(nt_s), frozenset(nt_t))


def write_alignments(alignments: Iterable[Alignment], stream) -> None:
    for a in alignments:
        stream.write(alignment_to_line(a))
        stream.write("\n")


def dumps(alignments: Iterable[Alignment]) -> str:
    buf = io.StringIO()
    write_alignments(alignments, buf)
    return buf.getvalue()


def read_alignments(stream) -> list:
    """Parse a whole file; duplicate (verse, annotator) lines are an error."""
    out = []
    seen: dict = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        a = parse_alignment_line(line, lineno=lineno)
        key = (a.verse_id, a.annotator_id)
        if key in seen:
            raise DuplicateIdError(
                f"alignment for verse {a.verse_id!r} by {a.annotator_id!r} "
                f"on line {lineno} repeats line {seen[key]}")
        seen[key] = lineno
        out.append(a)
    return out


def loads(text: str) -> list:
    return read_alignments(io.StringIO(text))


def load_alignment_file(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return read_alignments(fh)


def save_alignment_file(alignments: Iterable[Alignment], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_alignments(alignments, fh)


def group_by_verse(alignments: Iterable[Alignment]) -> dict:
    """verse_id -> list of alignments in file order."""
    out: dict = {}
    for a in alignments:
        out.setdefault(a.verse_id, []).append(a)
    return out
