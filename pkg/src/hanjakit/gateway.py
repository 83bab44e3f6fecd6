"""HTTP gateway exposing the pipeline, glossary, auth, history, and export."""
from __future__ import annotations

import json
from typing import Iterator, Optional

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse, Response, StreamingResponse
from pydantic import BaseModel

from . import backends, persistence, punctuation, translation
from .config import AppConfig
from .persistence import User
from .runtime import InputTooLarge, Runtime, UnknownBackend


class ApiError(Exception):
    """Documented machine-readable error surfaced as JSON."""

    def __init__(self, code: str, message: str, http_status: int):
        super().__init__(message)
        self.code = code
        self.message = message
        self.http_status = http_status


# domain exception -> (code, status)
_ERROR_MAP: list[tuple[type[Exception], str, int]] = [
    (persistence.EmailTaken, "email_taken", 409),
    (persistence.AuthFailed, "unauthenticated", 401),
    (persistence.Forbidden, "forbidden", 403),
    (persistence.NotFound, "not_found", 404),
    (persistence.ShapeMismatch, "shape_mismatch", 400),
    (persistence.StorageFailure, "storage_failure", 500),
    (translation.EmptyText, "empty_text", 400),
    (translation.UnsupportedDirection, "unsupported_direction", 400),
    (translation.StreamTruncated, "stream_truncated", 502),
    (backends.BackendUnavailable, "backend_unavailable", 502),
    (backends.InvalidBackendResponse, "invalid_backend_response", 502),
    (punctuation.PunctuationError, "bad_punctuation_input", 400),
    (UnknownBackend, "unknown_backend", 400),
    (InputTooLarge, "input_too_large", 413),
]


def _to_api_error(exc: Exception) -> ApiError:
    for exc_type, code, status in _ERROR_MAP:
        if isinstance(exc, exc_type):
            return ApiError(code, str(exc), status)
    return ApiError("internal_error", str(exc), 500)


class RegisterBody(BaseModel):
    email: str
    password: str
    display_name: str = ""


class LoginBody(BaseModel):
    email: str
    password: str


class PunctuateBody(BaseModel):
    text: str
    mode: str = "Comprehensive"
    backend: Optional[str] = None


class NerBody(BaseModel):
    text: str
    backend: Optional[str] = None


class TranslateBody(BaseModel):
    text: str
    target: str
    backend: Optional[str] = None


class AnnotationBody(BaseModel):
    task: str
    input_text: str
    model_output: object
    params: dict = {}


class AnnotationEditBody(BaseModel):
    edited_output: object


def create_app(config: AppConfig | None = None, runtime: Runtime | None = None) -> FastAPI:
    runtime = runtime or Runtime.from_config(config or AppConfig())
    app = FastAPI(title="hanjakit gateway")
    app.state.runtime = runtime

    async def handle_domain_error(request: Request, exc: Exception):
        error = exc if isinstance(exc, ApiError) else _to_api_error(exc)
        return JSONResponse(
            status_code=error.http_status,
            content={"error": {"code": error.code, "message": error.message}},
        )

    app.add_exception_handler(ApiError, handle_domain_error)
    for exc_type, _, _ in _ERROR_MAP:
        app.add_exception_handler(exc_type, handle_domain_error)

    def current_user(authorization: str = Header(default="")) -> User:
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise ApiError("unauthenticated", "missing bearer token", 401)
        user = runtime.store.resolve_session(token)
        if user is None:
            raise ApiError("unauthenticated", "invalid or expired session", 401)
        return user

    def require_text(text: str) -> str:
        if not text:
            raise ApiError("empty_text", "text must be non-empty", 400)
        return text

    # -- auth -------------------------------------------------------------

    @app.post("/api/auth/register")
    def register(body: RegisterBody):
        runtime.store.register_user(body.email, body.password, body.display_name)
        session = runtime.store.login(body.email, body.password)
        return {"token": session.token}

    @app.post("/api/auth/login")
    def login(body: LoginBody):
        session = runtime.store.login(body.email, body.password)
        return {"token": session.token}

    # -- pipeline ---------------------------------------------------------

    @app.post("/api/punctuate")
    def punctuate(body: PunctuateBody, user: User = Depends(current_user)):
        require_text(body.text)
        try:
            mode = punctuation.RenderMode(body.mode)
        except ValueError:
            raise ApiError("bad_request", f"unknown render mode {body.mode!r}", 400)
        result = runtime.punctuate(body.text, mode, body.backend)
        return {
            "labels": result["labels"],
            "rendered": result["rendered"],
            "offsets": result["offsets"],
            "stripped": result["stripped"],
        }

    @app.post("/api/ner")
    def ner(body: NerBody, user: User = Depends(current_user)):
        require_text(body.text)
        tags, spans = runtime.ner(body.text, body.backend)
        return {
            "tags": tags,
            "spans": [
                {"start": s.start, "end": s.end, "type": s.etype.value} for s in spans
            ],
        }

    @app.post("/api/translate")
    def translate(body: TranslateBody, user: User = Depends(current_user)):
        require_text(body.text)
        try:
            target = translation.LanguageTag(body.target)
        except ValueError:
            raise ApiError(
                "unsupported_direction", f"unknown target {body.target!r}", 400
            )
        # validate eagerly so pre-stream errors map to HTTP statuses
        deltas = runtime.translate_deltas(body.text, target, body.backend)

        def stream() -> Iterator[bytes]:
            try:
                for delta in deltas:
                    event = {"delta": delta.text, "done": delta.done}
                    yield (json.dumps(event, ensure_ascii=False) + "\n").encode()
            except Exception as exc:  # mid-stream failure: terminal error event
                error = _to_api_error(exc)
                yield (
                    json.dumps({"error": error.code, "done": True}) + "\n"
                ).encode()

        return StreamingResponse(stream(), media_type="application/x-ndjson")

    @app.get("/api/glossary")
    def glossary(text: str = Query(default="")):
        entries = runtime.glossary_entries(text)
        return {
            "entries": [
                {
                    "char": e.char,
                    "reading": e.reading,
                    "definitions": list(e.definitions),
                    "link": e.link,
                }
                for e in entries
            ]
        }

    # -- annotation history ----------------------------------------------

    @app.post("/api/annotations")
    def create_annotation(body: AnnotationBody, user: User = Depends(current_user)):
        record = runtime.store.create_record(
            user.id, body.task, body.input_text, body.model_output, body.params
        )
        return record.as_dict()

    @app.get("/api/annotations")
    def list_annotations(user: User = Depends(current_user)):
        return {"records": [r.as_dict() for r in runtime.store.list_records(user.id)]}

    @app.get("/api/annotations/export")
    def export_annotations(
        format: str = Query(default="json"), user: User = Depends(current_user)
    ):
        if format not in ("json", "csv"):
            raise ApiError("bad_request", f"unknown export format {format!r}", 400)
        payload = runtime.store.export_records(user.id, format)
        media = "application/json" if format == "json" else "text/csv; charset=utf-8"
        return Response(content=payload, media_type=media)

    @app.get("/api/annotations/{record_id}")
    def get_annotation(record_id: str, user: User = Depends(current_user)):
        return runtime.store.get_record(record_id, user.id).as_dict()

    @app.patch("/api/annotations/{record_id}")
    def edit_annotation(
        record_id: str, body: AnnotationEditBody, user: User = Depends(current_user)
    ):
        record = runtime.store.update_edit(record_id, user.id, body.edited_output)
        return record.as_dict()

    return app
