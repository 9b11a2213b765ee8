"""HTTP facade over the refinement core.

Routes::

    POST /courses                     create course (JSON body)
    GET  /courses                     list stored courses
    GET  /courses/{id}                fetch one course document
    PUT  /courses/{id}/grades         upload grades (text/csv body, full replace)
    POST /courses/{id}/refine         run refinement ({s1, s2, s3, alpha} body)
    GET  /courses/{id}/model?format=  latest model as json or dot

Errors come back as JSON problem documents ``{code, message, detail}``
with 400 for validation failures, 404 for missing resources, and 409 for
state conflicts. Model responses are returned byte-for-byte as persisted,
so the service and the CLI emit identical documents.
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import (
    Conflict,
    MalformedDocument,
    NoGradesUploaded,
    NoModelYet,
    NotFound,
    PrereqError,
)
from .export import export_dot, parse_model_json
from .store import CourseStore

__all__ = ["create_app"]

_STATUS = {
    NotFound: 404,
    NoModelYet: 404,
    Conflict: 409,
    NoGradesUploaded: 409,
}


def _status_for(exc: PrereqError) -> int:
    return _STATUS.get(type(exc), 400)


def _require_number(payload: dict, key: str) -> float:
    if key not in payload:
        raise MalformedDocument(f"missing parameter {key!r}")
    value = payload[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"parameter {key!r} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise MalformedDocument(f"parameter {key!r} must be finite")
    return float(value)


def create_app(data_dir: Path | str) -> FastAPI:
    store = CourseStore(data_dir)
    app = FastAPI(title="prereqminer", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(PrereqError)
    async def prereq_error_handler(request: Request, exc: PrereqError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "detail": exc.detail},
        )

    @app.post("/courses")
    async def create_course(request: Request):
        body = await request.body()
        course, created = store.create_course(body.decode("utf-8", errors="replace"))
        return JSONResponse(
            status_code=201 if created else 200,
            content={"id": course.id, "created": created},
        )

    @app.get("/courses")
    async def list_courses():
        return store.list_courses()

    @app.get("/courses/{course_id}")
    async def get_course(course_id: str):
        return Response(content=store.course_document(course_id),
                        media_type="application/json")

    @app.put("/courses/{course_id}/grades")
    async def put_grades(course_id: str, request: Request):
        body = await request.body()
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"grades must be UTF-8 text: {exc}") from exc
        course = store.get_course(course_id)
        matrix = store.put_grades(course_id, text)
        return {
            "learners": len(matrix.learner_ids),
            "concepts": len(course.concepts),
            "absent_cells": matrix.absent_cells(),
        }

    @app.post("/courses/{course_id}/refine")
    async def refine(course_id: str, request: Request):
        try:
            payload = await request.json()
        except Exception as exc:
            raise MalformedDocument(f"refine body must be JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise MalformedDocument("refine body must be a JSON object")
        document = store.refine(
            course_id,
            _require_number(payload, "s1"),
            _require_number(payload, "s2"),
            _require_number(payload, "s3"),
            _require_number(payload, "alpha"),
        )
        return Response(content=document, media_type="application/json")

    @app.get("/courses/{course_id}/model")
    async def get_model(course_id: str, format: str = "json"):
        if format not in ("json", "dot"):
            raise MalformedDocument(
                f"format must be 'json' or 'dot', got {format!r}")
        document = store.model_document(course_id)
        if format == "json":
            return Response(content=document, media_type="application/json")
        model = parse_model_json(document)
        course = store.get_course(course_id)
        return Response(content=export_dot(model, course),
                        media_type="text/vnd.graphviz")

    return app
