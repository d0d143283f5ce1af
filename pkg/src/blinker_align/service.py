"""HTTP API over a Store.

The browser client and the CLI both talk to these endpoints; nothing in the
UI touches the store directly.  Atoms cross the wire in the same ``s-t`` /
``s-∅`` / ``∅-t`` string syntax as the alignment file format, so a
client that renders the export byte-identically has only one encoding to get
right.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .agreement import (agreement_report, atoms, from_atoms, majority_vote,
                        sorted_atom_strings, variation_report)
from .alignment_io import dumps, parse_atom
from .errors import (AuthorizationError, BlinkerError, BoundsError,
                     CorpusSizeError, FormatError, LintGateError,
                     RevisionConflictError, VerseMismatchError)
from .linter import RULE_CATALOG, RULE_ORDER, lint
from .store import Store
from .tokens import Token, VersePair


class SubmitBody(BaseModel):
    atoms: List[str]
    base_revision: int = 0
    override: bool = False
    campaign_id: Optional[str] = None


class LintBody(BaseModel):
    verse_id: str
    annotator_id: str = "adhoc"
    atoms: List[str]


class CampaignBody(BaseModel):
    name: str = "campaign"
    groups: List[List[str]]
    set_size: int
    seed: int = 0


def _token_json(t: Token) -> dict:
    return {"index": t.index, "surface": t.surface, "kind": t.kind,
            "start": t.span[0], "end": t.span[1]}


def _verse_json(vp: VersePair) -> dict:
    return {
        "id": vp.id,
        "source_lang": vp.source_lang,
        "target_lang": vp.target_lang,
        "source_raw": vp.source_raw,
        "target_raw": vp.target_raw,
        "source_tokens": [_token_json(t) for t in vp.source_tokens],
        "target_tokens": [_token_json(t) for t in vp.target_tokens],
    }


def _parse_atoms(verse_id: str, annotator_id: str, atom_strings):
    return from_atoms(verse_id, annotator_id, [parse_atom(s) for s in atom_strings])


def create_app(store: Store) -> FastAPI:
    app = FastAPI(title="blinker alignment service")

    @app.exception_handler(LintGateError)
    async def _gate(request: Request, exc: LintGateError):
        return JSONResponse(status_code=422, content={"detail": {
            "message": str(exc),
            "findings": [f.to_json() for f in exc.findings],
        }})

    @app.exception_handler(RevisionConflictError)
    async def _conflict(request: Request, exc: RevisionConflictError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(AuthorizationError)
    async def _forbidden(request: Request, exc: AuthorizationError):
        return JSONResponse(status_code=403, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def _missing(request: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"detail": f"not found: {exc.args[0]!r}"})

    @app.exception_handler(BoundsError)
    @app.exception_handler(CorpusSizeError)
    @app.exception_handler(FormatError)
    @app.exception_handler(VerseMismatchError)
    async def _bad_payload(request: Request, exc: BlinkerError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _bad_value(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"ok": True, "verses": store.verse_count()}

    @app.get("/rules")
    def rules():
        return [{"rule_id": rid, "severity": RULE_CATALOG[rid][0],
                 "guideline": RULE_CATALOG[rid][1], "text": RULE_CATALOG[rid][2]}
                for rid in RULE_ORDER]

    @app.get("/verses/{verse_id}")
    def get_verse(verse_id: str):
        return _verse_json(store.get_verse(verse_id))

    @app.post("/campaigns")
    def create_campaign(body: CampaignBody):
        campaign = store.create_campaign(body.name, body.groups, body.set_size, body.seed)
        return campaign.to_json()

    @app.get("/campaigns/{campaign_id}")
    def get_campaign(campaign_id: str):
        c = store.get_campaign(campaign_id)
        return {**c.to_json(), "pending": len(store.pending_tasks(campaign_id))}

    @app.get("/campaigns/{campaign_id}/next")
    def next_task(campaign_id: str, annotator: str = Query(...)):
        verse_id = store.next_task(campaign_id, annotator)
        if verse_id is None:
            return {"campaign_id": campaign_id, "annotator_id": annotator,
                    "verse": None, "atoms": [], "base_revision": 0}
        stored = store.get_alignment(verse_id, annotator)
        return {
            "campaign_id": campaign_id,
            "annotator_id": annotator,
            "verse": _verse_json(store.get_verse(verse_id)),
            "atoms": sorted_atom_strings(atoms(stored.alignment)) if stored else [],
            "base_revision": stored.revision if stored else 0,
        }

    @app.get("/alignments/{verse_id}/{annotator_id}")
    def get_alignment(verse_id: str, annotator_id: str):
        stored = store.get_alignment(verse_id, annotator_id)
        if stored is None:
            raise KeyError(f"{verse_id}/{annotator_id}")
        return {
            "verse_id": verse_id,
            "annotator_id": annotator_id,
            "atoms": sorted_atom_strings(atoms(stored.alignment)),
            "revision": stored.revision,
            "override": stored.override,
            "findings": [f.to_json() for f in stored.findings],
        }

    @app.put("/alignments/{verse_id}/{annotator_id}")
    def submit(verse_id: str, annotator_id: str, body: SubmitBody):
        campaign_id = body.campaign_id or store.find_campaign(verse_id, annotator_id)
        if campaign_id is None:
            raise AuthorizationError(
                f"no campaign assigns verse {verse_id!r} to {annotator_id!r}")
        alignment = _parse_atoms(verse_id, annotator_id, body.atoms)
        revision, findings = store.submit_alignment(
            campaign_id, annotator_id, alignment,
            base_revision=body.base_revision, override=body.override)
        return {"revision": revision, "findings": [f.to_json() for f in findings]}

    @app.post("/lint")
    def lint_unsaved(body: LintBody):
        vp = store.get_verse(body.verse_id)
        alignment = _parse_atoms(body.verse_id, body.annotator_id, body.atoms)
        store._check_bounds(vp, alignment)
        findings = lint(vp, alignment, store.lexicons)
        return {"findings": [f.to_json() for f in findings]}

    @app.get("/agreement/{verse_id}")
    def agreement(verse_id: str):
        store.get_verse(verse_id)
        annotations = store.annotation_set(verse_id)  # ValueError -> 422 if empty
        report = agreement_report(annotations)
        return report.to_json()

    @app.get("/variation/{verse_id}")
    def variation(verse_id: str):
        vp = store.get_verse(verse_id)
        annotations = store.annotation_set(verse_id)
        return {"verse_id": verse_id,
                "categories": variation_report(vp, annotations, store.lexicons)}

    @app.post("/vote/{verse_id}")
    def vote(verse_id: str, threshold: float = Query(0.5)):
        store.get_verse(verse_id)
        annotations = store.annotation_set(verse_id)
        outcome = majority_vote(annotations, threshold)
        return {"verse_id": verse_id, "threshold": threshold,
                "annotators": annotations.annotators(), **outcome.to_json()}

    @app.get("/export/{campaign_id}")
    def export(campaign_id: str):
        text = dumps(store.export_alignments(campaign_id))
        return PlainTextResponse(text, media_type="text/plain; charset=utf-8")

    return app
