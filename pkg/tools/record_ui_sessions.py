#!/usr/bin/env python3
"""Record UI gesture sessions with expected atom output for contract tests.

The browser client re-implements the alignment editing semantics in
TypeScript.  To hold it to the authoritative implementation, this script
replays gesture sequences through the core operations (toggle_link,
block_link, mark_not_translated) plus the UI's selection rules, and records
the canonical atom string each session must produce.  The frontend test suite
replays the same gestures and compares byte-for-byte.

Selection rules (mirrored by frontend/src/state.ts):
  - A selection lives on one side at a time; clicking a token on that side
    (or on either side when nothing is selected) toggles its membership.
  - Clicking a token on the opposite side applies block_link when the
    selection holds several tokens, toggle_link when it holds one.  The
    selection persists, so repeated opposite-side clicks paint a block.
  - Clicking a side's NT bar marks that side's selected tokens Not
    Translated; with no same-side selection it does nothing.

Usage:  python3 tools/record_ui_sessions.py [output.json]
"""

import json
import random
import sys
from pathlib import Path

from blinker_align import (Alignment, Link, VersePair, atoms, block_link,
                           mark_not_translated, sorted_atom_strings,
                           toggle_link)

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures" / "sessions.json"

HUSBANDMAN_EN = "And Noah began to be an husbandman , and he planted a vineyard :"
HUSBANDMAN_FR = "Noà commença á cultiver la terre , et planta de la vigne."


def click(side, index):
    return {"kind": "click", "side": side, "index": index}


def nt_bar(side):
    return {"kind": "nt", "side": side}


def replay(source_len, target_len, gestures, initial_atoms=()):
    """Run a gesture sequence through the core editing operations."""
    a = Alignment("V1", "ui", source_len=source_len, target_len=target_len)
    for text in initial_atoms:
        s, _, t = text.partition("-")
        if t == "∅":
            a = mark_not_translated(a, "source", int(s))
        elif s == "∅":
            a = mark_not_translated(a, "target", int(t))
        else:
            a = toggle_link(a, int(s), int(t))
    sel_side, sel = None, set()
    for g in gestures:
        if g["kind"] == "click":
            side, index = g["side"], g["index"]
            if sel_side is None or side == sel_side:
                sel ^= {index}
                sel_side = side if sel else None
            elif len(sel) > 1:
                pair = (sel, {index}) if sel_side == "source" else ({index}, sel)
                a = block_link(a, *pair)
            else:
                (anchor,) = sel
                s, t = (anchor, index) if sel_side == "source" else (index, anchor)
                a = toggle_link(a, s, t)
        elif g["kind"] == "nt":
            if sel_side == g["side"]:
                for index in sorted(sel):
                    a = mark_not_translated(a, g["side"], index)
    return " ".join(sorted_atom_strings(atoms(a)))


def husbandman_session():
    vp = VersePair.build("GEN_9_20", "en", "fr", HUSBANDMAN_EN, HUSBANDMAN_FR)
    gestures = [click("source", i) for i in (3, 4, 5, 6)]
    gestures += [click("target", t) for t in (3, 4, 5)]
    source_len, target_len = len(vp.source_tokens), len(vp.target_tokens)
    expected = replay(source_len, target_len, gestures)
    assert len(expected.split()) == 12, expected
    return {
        "name": "husbandman-block",
        "source_len": source_len,
        "target_len": target_len,
        "initial_atoms": [],
        "gestures": gestures,
        "expected_atoms": expected,
    }


def random_initial_atoms(rng, source_len, target_len):
    """A valid starting alignment: some links, NT marks on untouched tokens."""
    a = Alignment("V1", "ui", source_len=source_len, target_len=target_len)
    for _ in range(rng.randint(0, 6)):
        a = toggle_link(a, rng.randrange(source_len), rng.randrange(target_len))
    for s in range(source_len):
        if s not in a.linked("source") and rng.random() < 0.25:
            a = mark_not_translated(a, "source", s)
    for t in range(target_len):
        if t not in a.linked("target") and rng.random() < 0.25:
            a = mark_not_translated(a, "target", t)
    return sorted_atom_strings(atoms(a))


def random_session(rng, name):
    source_len = rng.randint(4, 14)
    target_len = rng.randint(4, 14)
    initial = random_initial_atoms(rng, source_len, target_len) if rng.random() < 0.3 else []
    gestures = []
    for _ in range(rng.randint(25, 60)):
        if rng.random() < 0.12:
            gestures.append(nt_bar(rng.choice(["source", "target"])))
        else:
            side = rng.choice(["source", "target"])
            bound = source_len if side == "source" else target_len
            gestures.append(click(side, rng.randrange(bound)))
    return {
        "name": name,
        "source_len": source_len,
        "target_len": target_len,
        "initial_atoms": initial,
        "gestures": gestures,
        "expected_atoms": replay(source_len, target_len, gestures, initial),
    }


def main(argv):
    out = Path(argv[1]) if len(argv) > 1 else DEFAULT_OUT
    rng = random.Random(20260814)
    sessions = [husbandman_session()]
    sessions += [random_session(rng, f"random-{i:02d}") for i in range(20)]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"sessions": sessions}, indent=1, ensure_ascii=False) + "\n",
                   encoding="utf-8")
    print(f"wrote {len(sessions)} sessions to {out}")


if __name__ == "__main__":
    main(sys.argv)
