"""HTTP/JSON front door.  Thin plumbing over Project: ingest a corpus,
fetch deterministic view payloads (JSON or SVG, byte-cached), and drive
the review session."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .corpus import BibtexParseError, parse_bibtex
from .pipeline import OVERLAYS, VIEW_KINDS, MissingGoldError, Project, ProjectConfig
from .session import GoldStandard, TimeRegressionError
from .textpipe import EmptyVocabularyError, PipelineConfig
from .projection import ProjectionConfig
from .bundles import BundleParams
from .network import ForceParams

__all__ = ["create_app"]

DEFAULT_PAYLOAD_LIMIT = 16 * 1024 * 1024


class DecisionIn(BaseModel):
    study_id: str
    status: str
    at: float | None = None
    note: str = ""


class SelectionIn(BaseModel):
    study_ids: list[str] = Field(default_factory=list)


class GoldIn(BaseModel):
    included: list[str] = Field(default_factory=list)


def _config_from_payload(payload: dict) -> ProjectConfig:
    """Flat config dict -> nested config dataclasses.  Unknown keys are an
    error so typos do not silently fall back to defaults."""
    known = {
        "seed", "cluster_k", "leaf_capacity",
        "min_term_length", "min_document_frequency", "weighting", "knn_k",
        "control_count", "neighborhood_k",
        "beta", "samples",
        "force_iterations",
    }
    unknown = sorted(set(payload) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    pipeline = PipelineConfig(
        min_term_length=payload.get("min_term_length", 2),
        min_document_frequency=payload.get("min_document_frequency", 2),
        weighting=payload.get("weighting", "tfidf"),
        knn_k=payload.get("knn_k", 5),
    )
    projection = ProjectionConfig(
        control_count=payload.get("control_count"),
        neighborhood_k=payload.get("neighborhood_k", 10),
    )
    bundle = BundleParams(
        beta=payload.get("beta", 0.85), samples=payload.get("samples", 50)
    )
    force = ForceParams(iterations=payload.get("force_iterations", 300))
    return ProjectConfig(
        pipeline=pipeline,
        projection=projection,
        bundle=bundle,
        force=force,
        cluster_k=payload.get("cluster_k"),
        leaf_capacity=payload.get("leaf_capacity", 8),
        seed=payload.get("seed", 0),
    )


def create_app(
    *,
    payload_limit: int = DEFAULT_PAYLOAD_LIMIT,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="slrviz", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    projects: dict[str, Project] = {}
    view_cache: dict[tuple, tuple[str, bytes]] = {}
    counter = {"n": 0}

    def get_project(pid: str) -> Project:
        project = projects.get(pid)
        if project is None:
            raise HTTPException(status_code=404, detail=f"unknown project {pid!r}")
        return project

    @app.post("/projects", status_code=201)
    async def create_project(request: Request):
        raw = await request.body()
        if len(raw) > payload_limit:
            raise HTTPException(
                status_code=413,
                detail=f"payload of {len(raw)} bytes exceeds limit {payload_limit}",
            )
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise HTTPException(status_code=422, detail=[f"invalid JSON body: {exc}"])
        if not isinstance(payload, dict) or "bibtex" not in payload:
            raise HTTPException(
                status_code=422, detail=["body must be an object with a 'bibtex' field"]
            )
        try:
            config = _config_from_payload(payload.get("config") or {})
            corpus = parse_bibtex(payload["bibtex"], source="<upload>")
            project = Project(corpus, config)
        except BibtexParseError as exc:
            raise HTTPException(
                status_code=422,
                detail=[
                    f"entry {exc.entry_index}, byte {exc.offset}: {exc.message}"
                ],
            )
        except (ValueError, EmptyVocabularyError) as exc:
            raise HTTPException(status_code=422, detail=[str(exc)])
        if "started_at" in payload:
            project.session.started_at = float(payload["started_at"])
        counter["n"] += 1
        pid = f"p{counter['n']:04d}"
        projects[pid] = project
        return {
            "project_id": pid,
            "n_studies": len(corpus.studies),
            "corpus_hash": corpus.content_hash(),
            "started_at": project.session.started_at,
            "warnings": corpus.warnings,
        }

    @app.get("/projects/{pid}/views/{kind}")
    def get_view(
        pid: str,
        kind: str,
        overlay: str = "none",
        expression: str | None = None,
        focus: str | None = None,
        k: int | None = None,
        format: str = "json",
    ):
        project = get_project(pid)
        if kind not in VIEW_KINDS:
            raise HTTPException(status_code=404, detail=f"unknown view {kind!r}")
        if format not in ("json", "svg"):
            raise HTTPException(status_code=400, detail=f"unknown format {format!r}")
        if overlay not in OVERLAYS:
            raise HTTPException(status_code=400, detail=f"unknown overlay {overlay!r}")
        key = (pid, kind, overlay, expression, focus, k, format, len(project.session.log))
        if key not in view_cache:
            try:
                if format == "svg":
                    body = project.view_svg(
                        kind, overlay=overlay, expression=expression, focus=focus, k=k
                    ).encode("utf-8")
                    media = "image/svg+xml"
                else:
                    payload = project.view_json(
                        kind, overlay=overlay, expression=expression, focus=focus, k=k
                    )
                    body = json.dumps(payload, separators=(",", ":")).encode("utf-8")
                    media = "application/json"
            except (ValueError, KeyError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            view_cache[key] = (media, body)
        media, body = view_cache[key]
        return Response(content=body, media_type=media)

    @app.post("/projects/{pid}/session/decisions")
    def post_decision(pid: str, body: DecisionIn):
        project = get_project(pid)
        try:
            decision = project.session.decide(
                body.study_id, body.status, at=body.at, note=body.note
            )
        except TimeRegressionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc.args[0]))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "study_id": decision.study_id,
            "status": decision.status.value,
            "at": decision.at,
            "note": decision.note,
        }

    @app.post("/projects/{pid}/session/selection")
    def post_selection(pid: str, body: SelectionIn):
        project = get_project(pid)
        unknown = sorted(set(body.study_ids) - set(project.corpus.ids))
        if unknown:
            raise HTTPException(
                status_code=400, detail=f"unknown study ids: {', '.join(unknown)}"
            )
        project.selection = list(dict.fromkeys(body.study_ids))
        return {"selection": project.selection}

    @app.put("/projects/{pid}/gold")
    def put_gold(pid: str, body: GoldIn):
        project = get_project(pid)
        try:
            project.set_gold(GoldStandard(included=frozenset(body.included)))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"count": len(project.gold.included)}

    @app.get("/projects/{pid}/session/metrics")
    def get_metrics(pid: str):
        project = get_project(pid)
        try:
            return project.metrics().to_json_dict()
        except MissingGoldError as exc:
            raise HTTPException(
                status_code=409,
                detail=f"{exc}; PUT /projects/{pid}/gold first",
            )

    @app.get("/projects/{pid}/session")
    def get_session(pid: str):
        project = get_project(pid)
        session = project.session
        return {
            "corpus_hash": session.corpus_hash,
            "started_at": session.started_at,
            "statuses": {sid: s.value for sid, s in session.statuses().items()},
            "selection": project.selection,
            "decisions": [
                {
                    "study_id": d.study_id,
                    "status": d.status.value,
                    "at": d.at,
                    "note": d.note,
                }
                for d in session.log
            ],
        }

    @app.get("/projects/{pid}/studies")
    def get_studies(pid: str):
        return get_project(pid).studies_json()

    @app.get("/projects/{pid}/studies/{sid}")
    def get_study(pid: str, sid: str):
        project = get_project(pid)
        try:
            return project.study_json(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown study {sid!r}")

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
