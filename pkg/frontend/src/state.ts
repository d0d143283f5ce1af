/** Editing semantics and the gesture reducer.
 *
 * The three edit operations mirror the server's alignment model exactly:
 *
 *  - toggleLink: flip one link; adding it clears NT marks on both endpoints.
 *  - markNotTranslated: mark a token NT, removing every link touching it.
 *  - blockLink: complete m×n block between two phrases, clearing NT marks.
 *
 * Gestures build on them: clicking a token toggles its membership in the
 * current selection (a selection lives on one side at a time); clicking a
 * token on the opposite side applies blockLink (multi-selection) or
 * toggleLink (single selection); clicking a side's NT bar marks that side's
 * selected tokens.  The selection persists across opposite-side clicks, so a
 * 4-token selection clicked across 3 targets paints a 4×3 block, and a
 * single selected word can be linked to several counterparts in a row.
 */

import {
  EMPTY_WORKING_SET,
  Side,
  WorkingSet,
  linkKey,
  parseLinkKey,
  sameWorkingSet,
} from "./atoms.js";

export interface Bounds {
  readonly sourceLen: number;
  readonly targetLen: number;
}

function checkBounds(bounds: Bounds, side: Side, index: number): void {
  const len = side === "source" ? bounds.sourceLen : bounds.targetLen;
  if (!Number.isInteger(index) || index < 0 || index >= len) {
    throw new RangeError(`${side} index ${index} out of range [0, ${len})`);
  }
}

export function toggleLink(ws: WorkingSet, bounds: Bounds, s: number, t: number): WorkingSet {
  checkBounds(bounds, "source", s);
  checkBounds(bounds, "target", t);
  const key = linkKey(s, t);
  const links = new Set(ws.links);
  if (links.has(key)) {
    links.delete(key);
    return { links, ntSource: ws.ntSource, ntTarget: ws.ntTarget };
  }
  links.add(key);
  const ntSource = new Set(ws.ntSource);
  const ntTarget = new Set(ws.ntTarget);
  ntSource.delete(s);
  ntTarget.delete(t);
  return { links, ntSource, ntTarget };
}

export function markNotTranslated(ws: WorkingSet, bounds: Bounds, side: Side, index: number): WorkingSet {
  checkBounds(bounds, side, index);
  if ((side === "source" ? ws.ntSource : ws.ntTarget).has(index)) {
    return ws;
  }
  const links = new Set<string>();
  for (const key of ws.links) {
    const { s, t } = parseLinkKey(key);
    if ((side === "source" ? s : t) !== index) {
      links.add(key);
    }
  }
  const ntSource = new Set(ws.ntSource);
  const ntTarget = new Set(ws.ntTarget);
  (side === "source" ? ntSource : ntTarget).add(index);
  return { links, ntSource, ntTarget };
}

export function blockLink(
  ws: WorkingSet,
  bounds: Bounds,
  sourceIndices: Iterable<number>,
  targetIndices: Iterable<number>,
): WorkingSet {
  const S = [...new Set(sourceIndices)];
  const T = [...new Set(targetIndices)];
  if (S.length === 0 || T.length === 0) {
    throw new Error("blockLink requires non-empty index sets on both sides");
  }
  S.forEach((s) => checkBounds(bounds, "source", s));
  T.forEach((t) => checkBounds(bounds, "target", t));
  const links = new Set(ws.links);
  for (const s of S) {
    for (const t of T) {
      links.add(linkKey(s, t));
    }
  }
  const ntSource = new Set(ws.ntSource);
  const ntTarget = new Set(ws.ntTarget);
  S.forEach((s) => ntSource.delete(s));
  T.forEach((t) => ntTarget.delete(t));
  return { links, ntSource, ntTarget };
}

// -- gesture reducer ---------------------------------------------------------

export interface Selection {
  readonly side: Side | null;
  readonly indices: ReadonlySet<number>;
}

export const NO_SELECTION: Selection = { side: null, indices: new Set() };

export interface EditorState {
  readonly bounds: Bounds;
  readonly working: WorkingSet;
  readonly selection: Selection;
  readonly dirty: boolean;
}

export type Gesture =
  | { kind: "click"; side: Side; index: number }
  | { kind: "nt"; side: Side }
  | { kind: "clear" };

export function freshEditor(bounds: Bounds, working: WorkingSet = EMPTY_WORKING_SET): EditorState {
  return { bounds, working, selection: NO_SELECTION, dirty: false };
}

function withWorking(state: EditorState, working: WorkingSet, selection: Selection): EditorState {
  const dirty = state.dirty || !sameWorkingSet(working, state.working);
  return { bounds: state.bounds, working, selection, dirty };
}

function toggleMembership(selection: Selection, side: Side, index: number): Selection {
  const indices = new Set(selection.indices);
  if (indices.has(index)) {
    indices.delete(index);
  } else {
    indices.add(index);
  }
  return indices.size === 0 ? NO_SELECTION : { side, indices };
}

export function applyGesture(state: EditorState, gesture: Gesture): EditorState {
  switch (gesture.kind) {
    case "clear":
      return { ...state, selection: NO_SELECTION };

    case "click": {
      const { side, index } = gesture;
      checkBounds(state.bounds, side, index);
      const sel = state.selection;
      if (sel.side === null || sel.side === side) {
        return { ...state, selection: toggleMembership(sel, side, index) };
      }
      // opposite-side click completes a linking gesture; selection persists
      const picked = [...sel.indices];
      let working: WorkingSet;
      if (picked.length > 1) {
        working =
          sel.side === "source"
            ? blockLink(state.working, state.bounds, picked, [index])
            : blockLink(state.working, state.bounds, [index], picked);
      } else {
        const anchor = picked[0]!;
        working =
          sel.side === "source"
            ? toggleLink(state.working, state.bounds, anchor, index)
            : toggleLink(state.working, state.bounds, index, anchor);
      }
      return withWorking(state, working, sel);
    }

    case "nt": {
      const sel = state.selection;
      if (sel.side !== gesture.side || sel.indices.size === 0) {
        return state;
      }
      let working = state.working;
      for (const index of [...sel.indices].sort((a, b) => a - b)) {
        working = markNotTranslated(working, state.bounds, gesture.side, index);
      }
      return withWorking(state, working, sel);
    }
  }
}

export function replayGestures(state: EditorState, gestures: Iterable<Gesture>): EditorState {
  let current = state;
  for (const gesture of gestures) {
    current = applyGesture(current, gesture);
  }
  return current;
}
