/** DOM rendering: two token columns, a Not-Translated bar per side, link
 * lines in an SVG gutter, and a findings panel.  All interaction is routed
 * through handler callbacks; this module never touches application state.
 */

import { Side, WorkingSet, parseLinkKey } from "./atoms.js";
import { Finding, VersePayload } from "./api.js";
import { Selection } from "./state.js";

export interface ViewModel {
  verse: VersePayload | null;
  working: WorkingSet;
  selection: Selection;
  findings: Finding[];
  dirty: boolean;
  baseRevision: number;
  status: string;
}

export interface ViewHandlers {
  onTokenClick(side: Side, index: number): void;
  onNtBarClick(side: Side): void;
  onClearSelection(): void;
  onLint(): void;
  onSubmit(override: boolean): void;
  onNext(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function linkedIndices(ws: WorkingSet, side: Side): Set<number> {
  const out = new Set<number>();
  for (const key of ws.links) {
    const { s, t } = parseLinkKey(key);
    out.add(side === "source" ? s : t);
  }
  return out;
}

function tokenColumn(
  model: ViewModel,
  side: Side,
  handlers: ViewHandlers,
): HTMLElement {
  const verse = model.verse!;
  const tokens = side === "source" ? verse.source_tokens : verse.target_tokens;
  const lang = side === "source" ? verse.source_lang : verse.target_lang;
  const linked = linkedIndices(model.working, side);
  const ntSet = side === "source" ? model.working.ntSource : model.working.ntTarget;
  const selected =
    model.selection.side === side ? model.selection.indices : new Set<number>();

  const column = el("div", `column ${side}`);
  column.appendChild(el("div", "column-head", `${side} · ${lang}`));
  const list = el("div", "tokens");
  for (const token of tokens) {
    const classes = ["token", token.kind];
    if (linked.has(token.index)) classes.push("linked");
    if (ntSet.has(token.index)) classes.push("nt");
    if (selected.has(token.index)) classes.push("selected");
    const button = el("button", classes.join(" "), token.surface);
    button.dataset.side = side;
    button.dataset.index = String(token.index);
    button.title = `${side}[${token.index}] ${token.kind}`;
    button.addEventListener("click", () => handlers.onTokenClick(side, token.index));
    list.appendChild(button);
  }
  column.appendChild(list);

  const bar = el("button", "nt-bar", `Not Translated (${ntSet.size})`);
  bar.addEventListener("click", () => handlers.onNtBarClick(side));
  column.appendChild(bar);
  return column;
}

/** Straight lines between the vertical centers of linked token buttons. */
function drawLinks(root: HTMLElement, working: WorkingSet): void {
  const svg = root.querySelector<SVGSVGElement>("svg.links");
  if (!svg) return;
  const area = svg.getBoundingClientRect();
  svg.setAttribute("viewBox", `0 0 ${area.width} ${area.height}`);
  svg.replaceChildren();
  const button = (side: Side, index: number) =>
    root.querySelector<HTMLButtonElement>(
      `button[data-side="${side}"][data-index="${index}"]`,
    );
  for (const key of working.links) {
    const { s, t } = parseLinkKey(key);
    const from = button("source", s)?.getBoundingClientRect();
    const to = button("target", t)?.getBoundingClientRect();
    if (!from || !to) continue;
    const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
    line.setAttribute("x1", "0");
    line.setAttribute("y1", String(from.top + from.height / 2 - area.top));
    line.setAttribute("x2", String(area.width));
    line.setAttribute("y2", String(to.top + to.height / 2 - area.top));
    line.setAttribute("class", "link-line");
    svg.appendChild(line);
  }
}

function findingsPanel(findings: Finding[]): HTMLElement {
  const panel = el("div", "findings");
  if (findings.length === 0) {
    panel.appendChild(el("div", "finding none", "no findings"));
    return panel;
  }
  for (const f of findings) {
    const row = el("div", `finding ${f.severity}`);
    row.appendChild(el("span", "rule", f.rule_id));
    row.appendChild(el("span", "severity", f.severity));
    row.appendChild(el("span", "message", f.message));
    row.appendChild(el("span", "guideline", f.guideline));
    panel.appendChild(row);
  }
  return panel;
}

export function render(root: HTMLElement, model: ViewModel, handlers: ViewHandlers): void {
  root.replaceChildren();

  const header = el("header");
  if (model.verse) {
    header.appendChild(el("h1", "", model.verse.id));
    header.appendChild(
      el("span", "meta", `${model.verse.source_lang} → ${model.verse.target_lang}` +
        ` · revision ${model.baseRevision}` + (model.dirty ? " · unsaved" : "")),
    );
  } else {
    header.appendChild(el("h1", "", "no task"));
  }
  header.appendChild(el("span", "status", model.status));
  root.appendChild(header);

  if (model.verse) {
    const board = el("div", "board");
    board.appendChild(tokenColumn(model, "source", handlers));
    const gutter = el("div", "gutter");
    gutter.appendChild(document.createElementNS("http://www.w3.org/2000/svg", "svg"));
    gutter.firstElementChild!.setAttribute("class", "links");
    board.appendChild(gutter);
    board.appendChild(tokenColumn(model, "target", handlers));
    root.appendChild(board);

    const toolbar = el("div", "toolbar");
    const clear = el("button", "", "clear selection");
    clear.addEventListener("click", () => handlers.onClearSelection());
    const lintButton = el("button", "", "lint");
    lintButton.addEventListener("click", () => handlers.onLint());
    const submit = el("button", "primary", "submit");
    submit.addEventListener("click", () => handlers.onSubmit(false));
    const overrideSubmit = el("button", "danger", "submit with override");
    overrideSubmit.addEventListener("click", () => handlers.onSubmit(true));
    const next = el("button", "", "next verse");
    next.addEventListener("click", () => handlers.onNext());
    for (const b of [clear, lintButton, submit, overrideSubmit, next]) {
      toolbar.appendChild(b);
    }
    root.appendChild(toolbar);
    root.appendChild(findingsPanel(model.findings));
    drawLinks(root, model.working);
  }
}
