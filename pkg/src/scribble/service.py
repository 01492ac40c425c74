"""HTTP service exposing dialogue sessions and monologues to the UI.

Mutations take a per-session exclusive lock so concurrent requests against
one session serialize without blocking other sessions; every error surfaces
the engine's machine-readable code.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Mapping

from fastapi import Body, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .backends import Backend, BackendError, MockBackend, backend_from_env
from .domain import ScribbleError, ValidationError, validate_dialogue_config, validate_monologue_config
from .engine import (
    AbstractEmpty,
    NotFinalized,
    Session,
    SessionFinalized,
    SessionState,
    continue_session,
    create_dialogue_session,
    create_monologue,
    export_monologue,
    export_session,
    finalize_session,
    swap_emotion,
)
from .prompts import EmptyTranscript
from .screenplay import emit_screenplay
from .serialize import monologue_to_dict, session_to_dict
from .store import NotFound, SessionStore


def _status_for(error: ScribbleError) -> int:
    if isinstance(error, ValidationError):
        return 400
    if isinstance(error, NotFound):
        return 404
    if isinstance(error, (SessionFinalized, NotFinalized, EmptyTranscript)):
        return 409
    if isinstance(error, (BackendError, AbstractEmpty)):
        return 502
    return 500


def _session_payload(session: Session) -> dict:
    payload = session_to_dict(session)
    if session.state is SessionState.FINALIZED:
        payload["screenplay_text"] = emit_screenplay(session.final_document)
    return payload


def _export_response(body: bytes, item_id: str) -> Response:
    return Response(
        content=body,
        media_type="text/plain; charset=utf-8",
        headers={
            "Content-Disposition": f'attachment; filename="scribble-{item_id}.txt"'
        },
    )


def create_app(
    store: SessionStore | None = None,
    backend: Backend | None = None,
    *,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    store = store if store is not None else SessionStore()
    backend = backend if backend is not None else MockBackend()
    app = FastAPI(title="scribble", version="0.1.0")
    app.state.store = store
    app.state.backend = backend
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ScribbleError)
    def handle_engine_error(request: Request, error: ScribbleError) -> JSONResponse:
        body = {"code": error.code, "message": str(error)}
        if error.field:
            body["field"] = error.field
        return JSONResponse(status_code=_status_for(error), content=body)

    @app.exception_handler(RequestValidationError)
    def handle_bad_request(request: Request, error: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "InvalidRequest", "message": "malformed request body"},
        )

    @app.post("/api/dialogues", status_code=201)
    def create_dialogue(payload: dict[str, Any] = Body(...)) -> dict:
        config = validate_dialogue_config(
            payload.get("keywords") or "",
            payload.get("genre") or "",
            payload.get("creativity"),
        )
        session = create_dialogue_session(config, backend)
        store.put(session)
        return _session_payload(session)

    @app.get("/api/dialogues/{session_id}")
    def get_dialogue(session_id: str) -> dict:
        return _session_payload(store.get_session(session_id))

    @app.post("/api/dialogues/{session_id}/continue")
    def continue_dialogue(session_id: str, payload: dict[str, Any] = Body(...)) -> dict:
        with store.lock(session_id):
            session = store.get_session(session_id)
            updated = continue_session(session, str(payload.get("text") or ""), backend)
            store.put(updated)
        return _session_payload(updated)

    @app.post("/api/dialogues/{session_id}/finalize")
    def finalize_dialogue(session_id: str) -> dict:
        with store.lock(session_id):
            session = store.get_session(session_id)
            updated = finalize_session(session)
            store.put(updated)
        return _session_payload(updated)

    @app.get("/api/dialogues/{session_id}/export")
    def export_dialogue(session_id: str) -> Response:
        session = store.get_session(session_id)
        return _export_response(export_session(session), session.id)

    @app.post("/api/monologues", status_code=201)
    def create_monologue_endpoint(payload: dict[str, Any] = Body(...)) -> dict:
        config = validate_monologue_config(
            payload.get("sentence") or "",
            payload.get("emotions") or "",
            payload.get("creativity"),
        )
        monologue = create_monologue(config, backend)
        store.put(monologue)
        return monologue_to_dict(monologue)

    @app.get("/api/monologues/{monologue_id}")
    def get_monologue(monologue_id: str) -> dict:
        return monologue_to_dict(store.get_monologue(monologue_id))

    @app.get("/api/monologues/{monologue_id}/export")
    def export_monologue_endpoint(monologue_id: str) -> Response:
        monologue = store.get_monologue(monologue_id)
        return _export_response(export_monologue(monologue), monologue.id)

    @app.post("/api/monologues/{monologue_id}/swap-emotion")
    def swap_monologue_emotion(
        monologue_id: str, payload: dict[str, Any] = Body(...)
    ) -> dict:
        monologue = store.get_monologue(monologue_id)
        swapped = swap_emotion(monologue, str(payload.get("emotion") or ""))
        store.put(swapped)
        return monologue_to_dict(swapped)

    return app


def app_from_env(env: Mapping[str, str] | None = None) -> FastAPI:
    """Build the app from TLP_* environment configuration."""
    env = os.environ if env is None else env
    snapshot = env.get("TLP_SNAPSHOT")
    store = SessionStore(Path(snapshot) if snapshot else None)
    backend = backend_from_env(env=env)
    origins = tuple(
        origin.strip()
        for origin in env.get("TLP_CORS_ORIGINS", "*").split(",")
        if origin.strip()
    )
    return create_app(store, backend, cors_origins=origins)
