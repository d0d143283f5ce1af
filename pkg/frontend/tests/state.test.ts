import { describe, expect, it } from "vitest";

import { formatAtoms, ntExclusive, workingSetFromAtoms } from "../src/atoms.js";
import {
  Gesture,
  applyGesture,
  blockLink,
  freshEditor,
  markNotTranslated,
  replayGestures,
  toggleLink,
} from "../src/state.js";

const BOUNDS = { sourceLen: 6, targetLen: 6 };

function fromAtoms(atoms: string[]) {
  return workingSetFromAtoms(atoms);
}

describe("toggleLink", () => {
  it("adds then removes the same link", () => {
    const once = toggleLink(fromAtoms([]), BOUNDS, 1, 2);
    expect(formatAtoms(once)).toEqual(["1-2"]);
    expect(formatAtoms(toggleLink(once, BOUNDS, 1, 2))).toEqual([]);
  });

  it("adding a link clears NT marks on both endpoints", () => {
    const ws = fromAtoms(["1-∅", "∅-2", "4-∅"]);
    const out = toggleLink(ws, BOUNDS, 1, 2);
    expect(formatAtoms(out)).toEqual(["1-2", "4-∅"]);
  });

  it("rejects out-of-bounds indices", () => {
    expect(() => toggleLink(fromAtoms([]), BOUNDS, 6, 0)).toThrow(RangeError);
    expect(() => toggleLink(fromAtoms([]), BOUNDS, 0, -1)).toThrow(RangeError);
  });
});

describe("markNotTranslated", () => {
  it("removes every link touching the token", () => {
    const ws = fromAtoms(["2-0", "2-3", "1-1"]);
    const out = markNotTranslated(ws, BOUNDS, "source", 2);
    expect(formatAtoms(out)).toEqual(["1-1", "2-∅"]);
  });

  it("is idempotent", () => {
    const once = markNotTranslated(fromAtoms([]), BOUNDS, "target", 3);
    expect(markNotTranslated(once, BOUNDS, "target", 3)).toBe(once);
  });
});

describe("blockLink", () => {
  it("creates the complete bipartite block and clears NT", () => {
    const ws = fromAtoms(["3-∅", "∅-1"]);
    const out = blockLink(ws, BOUNDS, [2, 3], [1, 4, 5]);
    expect(formatAtoms(out)).toEqual(["2-1", "2-4", "2-5", "3-1", "3-4", "3-5"]);
  });

  it("requires both sides", () => {
    expect(() => blockLink(fromAtoms([]), BOUNDS, [], [1])).toThrow();
  });
});

describe("gesture reducer", () => {
  const click = (side: "source" | "target", index: number): Gesture => ({
    kind: "click",
    side,
    index,
  });

  it("builds a selection and links on the opposite-side click", () => {
    let state = freshEditor(BOUNDS);
    state = applyGesture(state, click("source", 0));
    expect(state.selection).toEqual({ side: "source", indices: new Set([0]) });
    state = applyGesture(state, click("target", 4));
    expect(formatAtoms(state.working)).toEqual(["0-4"]);
    expect(state.dirty).toBe(true);
  });

  it("clicking a linked pair again unlinks it", () => {
    let state = freshEditor(BOUNDS);
    for (const g of [click("source", 2), click("target", 2), click("target", 2)]) {
      state = applyGesture(state, g);
    }
    expect(formatAtoms(state.working)).toEqual([]);
  });

  it("selection persists so one source can link several targets", () => {
    let state = freshEditor(BOUNDS);
    for (const g of [click("source", 1), click("target", 0), click("target", 3)]) {
      state = applyGesture(state, g);
    }
    expect(formatAtoms(state.working)).toEqual(["1-0", "1-3"]);
  });

  it("multi-selection paints blocks column by column", () => {
    const gestures: Gesture[] = [
      click("source", 0),
      click("source", 1),
      click("target", 2),
      click("target", 3),
    ];
    const state = replayGestures(freshEditor(BOUNDS), gestures);
    expect(formatAtoms(state.working)).toEqual(["0-2", "0-3", "1-2", "1-3"]);
  });

  it("same-side click toggles membership; empty selection resets the side", () => {
    let state = freshEditor(BOUNDS);
    state = applyGesture(state, click("target", 5));
    state = applyGesture(state, click("target", 5));
    expect(state.selection.side).toBeNull();
    // a fresh click on the other side now starts a selection, not a link
    state = applyGesture(state, click("source", 1));
    expect(state.selection).toEqual({ side: "source", indices: new Set([1]) });
    expect(formatAtoms(state.working)).toEqual([]);
  });

  it("NT bar marks the same-side selection and ignores others", () => {
    let state = freshEditor(BOUNDS);
    state = applyGesture(state, click("source", 0));
    state = applyGesture(state, click("source", 2));
    state = applyGesture(state, { kind: "nt", side: "target" });
    expect(formatAtoms(state.working)).toEqual([]);
    state = applyGesture(state, { kind: "nt", side: "source" });
    expect(formatAtoms(state.working)).toEqual(["0-∅", "2-∅"]);
  });

  it("clear empties the selection without touching the working set", () => {
    let state = freshEditor(BOUNDS, fromAtoms(["1-1"]));
    state = applyGesture(state, click("source", 0));
    state = applyGesture(state, { kind: "clear" });
    expect(state.selection.side).toBeNull();
    expect(formatAtoms(state.working)).toEqual(["1-1"]);
  });

  it("no gesture sequence can break NT exclusivity", () => {
    // deterministic linear-congruential stream of random gestures
    let seed = 0xbeef;
    const rand = (n: number) => {
      seed = (seed * 1103515245 + 12345) & 0x7fffffff;
      return seed % n;
    };
    let state = freshEditor(BOUNDS);
    for (let i = 0; i < 2000; i++) {
      const roll = rand(10);
      const side = rand(2) === 0 ? "source" : "target";
      const gesture: Gesture =
        roll < 7
          ? { kind: "click", side, index: rand(6) }
          : roll < 9
            ? { kind: "nt", side }
            : { kind: "clear" };
      state = applyGesture(state, gesture);
      expect(ntExclusive(state.working)).toBe(true);
    }
  });
});
