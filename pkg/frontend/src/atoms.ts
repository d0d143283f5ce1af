/** Alignment atoms and their wire encoding.
 *
 * An alignment is exactly a set of atoms: `s-t` links between token indices,
 * `s-∅` for an untranslated source token, `∅-t` for an untranslated target
 * token.  The server speaks the same strings, so everything here must stay
 * byte-identical with the service's canonical form: links ascending by
 * (s, t), then source NT atoms ascending, then target NT atoms ascending.
 */

export const NT_MARK = "∅"; // ∅

export type Side = "source" | "target";

export interface Atom {
  readonly s: number | null;
  readonly t: number | null;
}

/** Immutable working alignment.  Link keys are canonical `s-t` strings. */
export interface WorkingSet {
  readonly links: ReadonlySet<string>;
  readonly ntSource: ReadonlySet<number>;
  readonly ntTarget: ReadonlySet<number>;
}

export const EMPTY_WORKING_SET: WorkingSet = {
  links: new Set(),
  ntSource: new Set(),
  ntTarget: new Set(),
};

export function linkKey(s: number, t: number): string {
  return `${s}-${t}`;
}

function parseIndex(text: string, atom: string): number {
  if (!/^\d+$/.test(text)) {
    throw new Error(`malformed atom ${JSON.stringify(atom)}`);
  }
  return Number(text);
}

export function parseAtom(text: string): Atom {
  const cut = text.indexOf("-");
  if (cut < 0) {
    throw new Error(`malformed atom ${JSON.stringify(text)}`);
  }
  const left = text.slice(0, cut);
  const right = text.slice(cut + 1);
  if (left === NT_MARK && right === NT_MARK) {
    throw new Error(`malformed atom ${JSON.stringify(text)}`);
  }
  return {
    s: left === NT_MARK ? null : parseIndex(left, text),
    t: right === NT_MARK ? null : parseIndex(right, text),
  };
}

export function formatAtom(atom: Atom): string {
  if (atom.s === null && atom.t === null) {
    throw new Error("atom needs at least one index");
  }
  const left = atom.s === null ? NT_MARK : String(atom.s);
  const right = atom.t === null ? NT_MARK : String(atom.t);
  return `${left}-${right}`;
}

export function parseLinkKey(key: string): { s: number; t: number } {
  const atom = parseAtom(key);
  if (atom.s === null || atom.t === null) {
    throw new Error(`not a link: ${JSON.stringify(key)}`);
  }
  return { s: atom.s, t: atom.t };
}

/** Atom strings of a working set, in the canonical order. */
export function formatAtoms(ws: WorkingSet): string[] {
  const links = [...ws.links].map(parseLinkKey);
  links.sort((a, b) => a.s - b.s || a.t - b.t);
  const ntS = [...ws.ntSource].sort((a, b) => a - b);
  const ntT = [...ws.ntTarget].sort((a, b) => a - b);
  return [
    ...links.map((l) => linkKey(l.s, l.t)),
    ...ntS.map((s) => `${s}-${NT_MARK}`),
    ...ntT.map((t) => `${NT_MARK}-${t}`),
  ];
}

/** Rebuild a working set from wire atoms (inverse of formatAtoms). */
export function workingSetFromAtoms(atomStrings: Iterable<string>): WorkingSet {
  const links = new Set<string>();
  const ntSource = new Set<number>();
  const ntTarget = new Set<number>();
  for (const text of atomStrings) {
    const atom = parseAtom(text);
    if (atom.s !== null && atom.t !== null) {
      links.add(linkKey(atom.s, atom.t));
    } else if (atom.s !== null) {
      ntSource.add(atom.s);
    } else if (atom.t !== null) {
      ntTarget.add(atom.t);
    }
  }
  return { links, ntSource, ntTarget };
}

export function sameWorkingSet(a: WorkingSet, b: WorkingSet): boolean {
  const eq = <T>(x: ReadonlySet<T>, y: ReadonlySet<T>) =>
    x.size === y.size && [...x].every((v) => y.has(v));
  return eq(a.links, b.links) && eq(a.ntSource, b.ntSource) && eq(a.ntTarget, b.ntTarget);
}

/** No token is simultaneously linked and marked Not Translated. */
export function ntExclusive(ws: WorkingSet): boolean {
  for (const key of ws.links) {
    const { s, t } = parseLinkKey(key);
    if (ws.ntSource.has(s) || ws.ntTarget.has(t)) {
      return false;
    }
  }
  return true;
}
