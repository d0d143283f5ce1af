/** Application wiring: fetch tasks, route gestures, submit with revisions.
 *
 * URL parameters select the session:
 *   index.html?api=http://127.0.0.1:8000&campaign=c1&annotator=a1
 */

import { Side, formatAtoms, workingSetFromAtoms } from "./atoms.js";
import { ApiClient, ApiError, Finding, VersePayload } from "./api.js";
import { EditorState, applyGesture, freshEditor } from "./state.js";
import { ViewModel, render } from "./view.js";

interface Session {
  verse: VersePayload | null;
  editor: EditorState | null;
  findings: Finding[];
  baseRevision: number;
  status: string;
}

function boot(): void {
  const params = new URLSearchParams(location.search);
  const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8000");
  const campaign = params.get("campaign") ?? "c1";
  const annotator = params.get("annotator") ?? "a1";
  const root = document.getElementById("app")!;

  const session: Session = {
    verse: null,
    editor: null,
    findings: [],
    baseRevision: 0,
    status: "loading…",
  };
  let submitting = false;

  function show(): void {
    const model: ViewModel = {
      verse: session.verse,
      working: session.editor?.working ?? { links: new Set(), ntSource: new Set(), ntTarget: new Set() },
      selection: session.editor?.selection ?? { side: null, indices: new Set() },
      findings: session.findings,
      dirty: session.editor?.dirty ?? false,
      baseRevision: session.baseRevision,
      status: session.status,
    };
    render(root, model, handlers);
  }

  function gesture(g: Parameters<typeof applyGesture>[1]): void {
    if (!session.editor) return;
    session.editor = applyGesture(session.editor, g);
    show();
  }

  async function loadNext(): Promise<void> {
    session.status = "loading…";
    show();
    try {
      const task = await api.nextTask(campaign, annotator);
      session.verse = task.verse;
      session.findings = [];
      session.baseRevision = task.base_revision;
      if (task.verse) {
        session.editor = freshEditor(
          { sourceLen: task.verse.source_tokens.length, targetLen: task.verse.target_tokens.length },
          workingSetFromAtoms(task.atoms),
        );
        session.status = `annotating as ${annotator}`;
      } else {
        session.editor = null;
        session.status = "all tasks done";
      }
    } catch (err) {
      session.status = err instanceof ApiError ? err.message : String(err);
    }
    show();
  }

  const handlers = {
    onTokenClick: (side: Side, index: number) => gesture({ kind: "click", side, index }),
    onNtBarClick: (side: Side) => gesture({ kind: "nt", side }),
    onClearSelection: () => gesture({ kind: "clear" }),

    onLint: async () => {
      if (!session.verse || !session.editor) return;
      try {
        session.findings = await api.lint(session.verse.id, formatAtoms(session.editor.working));
        session.status = "linted";
      } catch (err) {
        session.status = err instanceof ApiError ? err.message : String(err);
      }
      show();
    },

    onSubmit: async (override: boolean) => {
      if (!session.verse || !session.editor || submitting) return;
      submitting = true;
      session.status = "submitting…";
      show();
      try {
        const result = await api.submit(
          session.verse.id,
          annotator,
          formatAtoms(session.editor.working),
          session.baseRevision,
          override,
        );
        if (result.ok) {
          session.baseRevision = result.revision;
          session.findings = result.findings;
          session.editor = { ...session.editor, dirty: false };
          session.status = `saved as revision ${result.revision}`;
        } else if (result.status === 409) {
          session.status = "conflict: a newer revision exists — reload to continue";
        } else if (result.status === 422 && result.findings.length > 0) {
          session.findings = result.findings;
          session.status = "blocked by guideline errors (fix or submit with override)";
        } else {
          session.status = result.detail;
        }
      } catch (err) {
        session.status = err instanceof ApiError ? err.message : String(err);
      }
      submitting = false;
      show();
    },

    onNext: () => void loadNext(),
  };

  document.addEventListener("keydown", (event) => {
    if (event.key === "Escape") handlers.onClearSelection();
  });

  void loadNext();
}

boot();
