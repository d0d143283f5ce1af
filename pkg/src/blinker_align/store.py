"""Sqlite-backed persistence: corpus, campaigns, task queue, revision history.

Alignments are insert-only: each submission adds a new revision row and the
largest revision per (verse, annotator) is current.  Submissions carry the
revision the client based its edit on; a mismatch with the stored head means
someone else submitted in between and the write is refused.  Error findings
from the coverage and Not-Translated rules block a submission unless the
annotator overrides, and overrides are recorded with the revision.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Optional

from .agreement import AnnotationSet, atoms
from .alignment import Alignment
from .alignment_io import alignment_to_line, parse_alignment_line
from .corpus import sample_verse_sets
from .errors import (AuthorizationError, BoundsError, LintGateError,
                     RevisionConflictError)
from .lexicons import Lexicons
from .linter import R1_COMPLETENESS, R2_NT_EXCLUSIVITY, LintFinding, lint
from .tokens import SOURCE, TARGET, ElisionTable, VersePair

PENDING = "pending"
SUBMITTED = "submitted"

BLOCKING_RULES = (R1_COMPLETENESS, R2_NT_EXCLUSIVITY)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS verses (
    id TEXT PRIMARY KEY,
    source_lang TEXT NOT NULL,
    target_lang TEXT NOT NULL,
    source_raw TEXT NOT NULL,
    target_raw TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS campaigns (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    seed INTEGER NOT NULL,
    set_size INTEGER NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS campaign_sets (
    campaign_id TEXT NOT NULL REFERENCES campaigns(id),
    set_index INTEGER NOT NULL,
    position INTEGER NOT NULL,
    verse_id TEXT NOT NULL REFERENCES verses(id),
    PRIMARY KEY (campaign_id, set_index, position)
);
CREATE TABLE IF NOT EXISTS campaign_annotators (
    campaign_id TEXT NOT NULL REFERENCES campaigns(id),
    annotator_id TEXT NOT NULL,
    set_index INTEGER NOT NULL,
    PRIMARY KEY (campaign_id, annotator_id)
);
CREATE TABLE IF NOT EXISTS tasks (
    campaign_id TEXT NOT NULL REFERENCES campaigns(id),
    annotator_id TEXT NOT NULL,
    verse_id TEXT NOT NULL,
    position INTEGER NOT NULL,
    status TEXT NOT NULL DEFAULT 'pending',
    PRIMARY KEY (campaign_id, annotator_id, verse_id)
);
CREATE TABLE IF NOT EXISTS alignments (
    verse_id TEXT NOT NULL,
    annotator_id TEXT NOT NULL,
    revision INTEGER NOT NULL,
    line TEXT NOT NULL,
    findings TEXT NOT NULL,
    override INTEGER NOT NULL DEFAULT 0,
    submitted_at TEXT NOT NULL,
    PRIMARY KEY (verse_id, annotator_id, revision)
);
"""


@dataclass(frozen=True)
class Campaign:
    id: str
    name: str
    seed: int
    set_size: int
    verse_sets: tuple   # tuple[tuple[str, ...], ...], one per group
    groups: tuple       # tuple[tuple[str, ...], ...]

    def set_for(self, annotator_id: str) -> tuple:
        for group, verse_set in zip(self.groups, self.verse_sets):
            if annotator_id in group:
                return verse_set
        raise AuthorizationError(f"annotator {annotator_id!r} is not part of campaign {self.id!r}")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "seed": self.seed,
            "set_size": self.set_size,
            "verse_sets": [list(vs) for vs in self.verse_sets],
            "groups": [list(g) for g in self.groups],
        }


@dataclass(frozen=True)
class StoredAlignment:
    alignment: Alignment
    findings: tuple
    override: bool
    submitted_at: str

    @property
    def revision(self) -> int:
        return self.alignment.revision


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


class Store:
    """All state behind one sqlite file (or ``:memory:`` for tests)."""

    def __init__(self, path=":memory:", lexicons: Optional[Lexicons] = None,
                 elisions: Optional[ElisionTable] = None):
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        self._conn.execute("PRAGMA foreign_keys = ON")
        self._lock = threading.RLock()
        self.lexicons = lexicons or Lexicons.default()
        self.elisions = elisions or ElisionTable.default()
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        self._conn.close()

    # -- corpus ---------------------------------------------------------

    def add_verses(self, pairs: Iterable[VersePair]) -> int:
        rows = [(p.id, p.source_lang, p.target_lang, p.source_raw, p.target_raw)
                for p in pairs]
        with self._lock, self._conn:
            self._conn.executemany(
                "INSERT OR REPLACE INTO verses VALUES (?, ?, ?, ?, ?)", rows)
        return len(rows)

    def verse_count(self) -> int:
        with self._lock:
            (n,) = self._conn.execute("SELECT COUNT(*) FROM verses").fetchone()
        return n

    def verse_ids(self) -> list:
        with self._lock:
            rows = self._conn.execute("SELECT id FROM verses ORDER BY id").fetchall()
        return [r[0] for r in rows]

    def get_verse(self, verse_id: str) -> VersePair:
        with self._lock:
            row = self._conn.execute(
                "SELECT id, source_lang, target_lang, source_raw, target_raw "
                "FROM verses WHERE id = ?", (verse_id,)).fetchone()
        if row is None:
            raise KeyError(verse_id)
        return VersePair.build(*row, table=self.elisions)

    # -- campaigns ------------------------------------------------------

    def create_campaign(self, name: str, groups, set_size: int, seed: int) -> Campaign:
        groups = tuple(tuple(g) for g in groups)
        if not groups or any(not g for g in groups):
            raise ValueError("campaign needs at least one non-empty annotator group")
        flat = [a for g in groups for a in g]
        if len(set(flat)) != len(flat):
            raise ValueError("an annotator may belong to only one group")
        with self._lock:
            verse_sets = sample_verse_sets(self.verse_ids(), set_size, len(groups), seed)
            (n,) = self._conn.execute("SELECT COUNT(*) FROM campaigns").fetchone()
            campaign_id = f"c{n + 1}"
            with self._conn:
                self._conn.execute(
                    "INSERT INTO campaigns VALUES (?, ?, ?, ?, ?)",
                    (campaign_id, name, seed, set_size, _utcnow()))
                for set_index, (group, verse_set) in enumerate(zip(groups, verse_sets)):
                    self._conn.executemany(
                        "INSERT INTO campaign_sets VALUES (?, ?, ?, ?)",
                        [(campaign_id, set_index, pos, vid)
                         for pos, vid in enumerate(verse_set)])
                    self._conn.executemany(
                        "INSERT INTO campaign_annotators VALUES (?, ?, ?)",
                        [(campaign_id, a, set_index) for a in group])
                    self._conn.executemany(
                        "INSERT INTO tasks (campaign_id, annotator_id, verse_id, position) "
                        "VALUES (?, ?, ?, ?)",
                        [(campaign_id, a, vid, pos)
                         for a in group for pos, vid in enumerate(verse_set)])
        return Campaign(campaign_id, name, seed, set_size,
                        tuple(tuple(vs) for vs in verse_sets), groups)

    def get_campaign(self, campaign_id: str) -> Campaign:
        with self._lock:
            row = self._conn.execute(
                "SELECT id, name, seed, set_size FROM campaigns WHERE id = ?",
                (campaign_id,)).fetchone()
            if row is None:
                raise KeyError(campaign_id)
            sets: dict = {}
            for set_index, vid in self._conn.execute(
                    "SELECT set_index, verse_id FROM campaign_sets "
                    "WHERE campaign_id = ? ORDER BY set_index, position", (campaign_id,)):
                sets.setdefault(set_index, []).append(vid)
            groups: dict = {}
            for annotator_id, set_index in self._conn.execute(
                    "SELECT annotator_id, set_index FROM campaign_annotators "
                    "WHERE campaign_id = ? ORDER BY rowid", (campaign_id,)):
                groups.setdefault(set_index, []).append(annotator_id)
        indices = sorted(sets)
        return Campaign(row[0], row[1], row[2], row[3],
                        tuple(tuple(sets[i]) for i in indices),
                        tuple(tuple(groups.get(i, [])) for i in indices))

    def campaign_ids(self) -> list:
        with self._lock:
            rows = self._conn.execute("SELECT id FROM campaigns ORDER BY id").fetchall()
        return [r[0] for r in rows]

    def pending_tasks(self, campaign_id: str) -> list:
        self.get_campaign(campaign_id)
        with self._lock:
            rows = self._conn.execute(
                "SELECT annotator_id, verse_id FROM tasks "
                "WHERE campaign_id = ? AND status = ? ORDER BY annotator_id, position",
                (campaign_id, PENDING)).fetchall()
        return [tuple(r) for r in rows]

    def task_statuses(self, campaign_id: str) -> dict:
        with self._lock:
            rows = self._conn.execute(
                "SELECT annotator_id, verse_id, status FROM tasks WHERE campaign_id = ?",
                (campaign_id,)).fetchall()
        return {(a, v): s for a, v, s in rows}

    def next_task(self, campaign_id: str, annotator_id: str) -> Optional[str]:
        campaign = self.get_campaign(campaign_id)
        campaign.set_for(annotator_id)  # raises AuthorizationError if unknown
        with self._lock:
            row = self._conn.execute(
                "SELECT verse_id FROM tasks WHERE campaign_id = ? AND annotator_id = ? "
                "AND status = ? ORDER BY position LIMIT 1",
                (campaign_id, annotator_id, PENDING)).fetchone()
        return row[0] if row else None

    def find_campaign(self, verse_id: str, annotator_id: str) -> Optional[str]:
        """Campaign that assigned this verse to this annotator, if any."""
        with self._lock:
            row = self._conn.execute(
                "SELECT campaign_id FROM tasks WHERE verse_id = ? AND annotator_id = ? "
                "ORDER BY campaign_id LIMIT 1", (verse_id, annotator_id)).fetchone()
        return row[0] if row else None

    # -- alignments -----------------------------------------------------

    def current_revision(self, verse_id: str, annotator_id: str) -> int:
        with self._lock:
            row = self._conn.execute(
                "SELECT MAX(revision) FROM alignments WHERE verse_id = ? AND annotator_id = ?",
                (verse_id, annotator_id)).fetchone()
        return row[0] or 0

    def _row_to_stored(self, row) -> StoredAlignment:
        verse_id, annotator_id, revision, line, findings_json, override, at = row
        a = parse_alignment_line(line)
        a = Alignment(a.verse_id, a.annotator_id, a.links, a.nt_source, a.nt_target,
                      revision=revision)
        findings = tuple(LintFinding.from_json(d) for d in json.loads(findings_json))
        return StoredAlignment(a, findings, bool(override), at)

    def get_alignment(self, verse_id: str, annotator_id: str,
                      revision: Optional[int] = None) -> Optional[StoredAlignment]:
        sql = ("SELECT verse_id, annotator_id, revision, line, findings, override, "
               "submitted_at FROM alignments WHERE verse_id = ? AND annotator_id = ?")
        args = [verse_id, annotator_id]
        if revision is None:
            sql += " ORDER BY revision DESC LIMIT 1"
        else:
            sql += " AND revision = ?"
            args.append(revision)
        with self._lock:
            row = self._conn.execute(sql, args).fetchone()
        return self._row_to_stored(row) if row else None

    def history(self, verse_id: str, annotator_id: str) -> list:
        with self._lock:
            rows = self._conn.execute(
                "SELECT verse_id, annotator_id, revision, line, findings, override, "
                "submitted_at FROM alignments WHERE verse_id = ? AND annotator_id = ? "
                "ORDER BY revision", (verse_id, annotator_id)).fetchall()
        return [self._row_to_stored(r) for r in rows]

    def alignments_for_verse(self, verse_id: str) -> list:
        """Latest revision per annotator, ordered by annotator id."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT a.verse_id, a.annotator_id, a.revision, a.line, a.findings, "
                "a.override, a.submitted_at FROM alignments a JOIN ("
                "  SELECT annotator_id, MAX(revision) AS rev FROM alignments "
                "  WHERE verse_id = ? GROUP BY annotator_id) m "
                "ON a.annotator_id = m.annotator_id AND a.revision = m.rev "
                "WHERE a.verse_id = ? ORDER BY a.annotator_id",
                (verse_id, verse_id)).fetchall()
        return [self._row_to_stored(r) for r in rows]

    def annotation_set(self, verse_id: str) -> AnnotationSet:
        stored = self.alignments_for_verse(verse_id)
        return AnnotationSet(verse_id, tuple(s.alignment for s in stored))

    def _check_bounds(self, vp: VersePair, a: Alignment) -> None:
        ns, nt = len(vp.source_tokens), len(vp.target_tokens)
        for s, t in atoms(a):
            if s is not None and not 0 <= s < ns:
                raise BoundsError(SOURCE, s, ns)
            if t is not None and not 0 <= t < nt:
                raise BoundsError(TARGET, t, nt)

    def submit_alignment(self, campaign_id: str, annotator_id: str, alignment: Alignment,
                         base_revision: int = 0, override: bool = False):
        """Validate, lint-gate and store one submission; returns (revision, findings)."""
        campaign = self.get_campaign(campaign_id)
        if alignment.annotator_id != annotator_id:
            raise AuthorizationError(
                f"alignment is signed {alignment.annotator_id!r}, submitted as {annotator_id!r}")
        if alignment.verse_id not in campaign.set_for(annotator_id):
            raise AuthorizationError(
                f"verse {alignment.verse_id!r} is not assigned to {annotator_id!r} "
                f"in campaign {campaign_id!r}")
        vp = self.get_verse(alignment.verse_id)
        self._check_bounds(vp, alignment)
        findings = lint(vp, alignment, self.lexicons)
        blocking = [f for f in findings if f.rule_id in BLOCKING_RULES]
        if blocking and not override:
            raise LintGateError(blocking)
        with self._lock:
            current = self.current_revision(alignment.verse_id, annotator_id)
            if base_revision != current:
                raise RevisionConflictError(
                    f"base revision {base_revision} is stale: {annotator_id!r} on verse "
                    f"{alignment.verse_id!r} is at revision {current}")
            revision = current + 1
            stored = Alignment(alignment.verse_id, annotator_id, alignment.links,
                               alignment.nt_source, alignment.nt_target, revision=revision)
            with self._conn:
                self._conn.execute(
                    "INSERT INTO alignments VALUES (?, ?, ?, ?, ?, ?, ?)",
                    (alignment.verse_id, annotator_id, revision, alignment_to_line(stored),
                     json.dumps([f.to_json() for f in findings]), int(override), _utcnow()))
                self._conn.execute(
                    "UPDATE tasks SET status = ? WHERE campaign_id = ? AND annotator_id = ? "
                    "AND verse_id = ?",
                    (SUBMITTED, campaign_id, annotator_id, alignment.verse_id))
        return revision, findings

    def export_alignments(self, campaign_id: str, verses=None) -> list:
        """Latest alignments of campaign verses, ordered (verse_id, annotator_id)."""
        campaign = self.get_campaign(campaign_id)
        wanted = {v for vs in campaign.verse_sets for v in vs}
        if verses is not None:
            wanted &= set(verses)
        out = []
        for verse_id in sorted(wanted):
            out.extend(s.alignment for s in self.alignments_for_verse(verse_id))
        return out
