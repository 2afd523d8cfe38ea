"""HTTP service exposing the analysis pipeline.

POST /analyze  — full pipeline (OCR + insight generation)
POST /extract  — OCR-only text extraction
GET  /examples — bundled example documents
GET  /examples/{id}/pdf — raw PDF bytes for the viewer pane
GET  /health   — liveness, never calls external providers

Every 5xx body names exactly one failed stage (resolve, ocr, llm, parse).
Validation failures are degraded successes: the report is returned along
with its deficiencies.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .config import ServiceConfig, build_pipeline
from .errors import (
    EmptyCompletion,
    EmptyExtraction,
    InsightError,
    ModelRejected,
    ModelUnavailable,
    NoRecognizedSections,
    NotAPdf,
    OcrError,
    ProviderRejected,
    ProviderUnavailable,
    SourceError,
    TooLarge,
    UnknownExample,
    UrlFetchFailed,
)
from .model import DocumentSource
from .pipeline import AnalysisPipeline, QueueFull, UnknownProfile
from .prompts import DEFAULT_PROFILE_ID


def _error_response(exc: Exception) -> JSONResponse:
    stage = getattr(exc, "stage", None)
    detail = str(exc)
    if isinstance(exc, (UnknownProfile, UnknownExample, NotAPdf, ValueError)):
        return JSONResponse(
            {"error": "bad-request", "detail": detail, "stage": stage}, status_code=400
        )
    if isinstance(exc, TooLarge):
        return JSONResponse(
            {"error": "too-large", "detail": detail, "stage": stage}, status_code=413
        )
    if isinstance(exc, QueueFull):
        return JSONResponse(
            {"error": "queue-full", "detail": detail, "stage": stage}, status_code=503
        )
    if isinstance(exc, NoRecognizedSections):
        return JSONResponse(
            {
                "error": "no-recognized-sections",
                "detail": detail,
                "stage": "parse",
                "raw_model_text": exc.raw_text,
            },
            status_code=422,
        )
    if isinstance(
        exc,
        (
            UrlFetchFailed,
            ProviderUnavailable,
            ProviderRejected,
            EmptyExtraction,
            ModelUnavailable,
            ModelRejected,
            EmptyCompletion,
        ),
    ):
        return JSONResponse(
            {"error": "upstream-failure", "detail": detail, "stage": stage}, status_code=502
        )
    raise exc


async def _parse_source(request: Request) -> DocumentSource:
    content_type = request.headers.get("content-type", "")
    if content_type.startswith("multipart/form-data"):
        form = await request.form()
        upload = form.get("pdf")
        if upload is None:
            raise ValueError("multipart request must carry a 'pdf' file field")
        data = await upload.read()
        return DocumentSource.from_bytes(data)
    body = await request.json()
    if not isinstance(body, dict):
        raise ValueError("JSON body must be an object")
    if "url" in body:
        return DocumentSource.from_url(body["url"])
    if "example_id" in body:
        return DocumentSource.from_example(body["example_id"])
    raise ValueError("JSON body must carry 'url' or 'example_id'")


def create_app(
    config: ServiceConfig | None = None,
    pipeline: AnalysisPipeline | None = None,
) -> FastAPI:
    config = config or ServiceConfig.from_env()
    pipeline = pipeline or build_pipeline(config)

    app = FastAPI(title="insightmap", version=__version__)
    app.state.pipeline = pipeline
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.post("/analyze")
    async def analyze(request: Request, profile: str = DEFAULT_PROFILE_ID, refresh: bool = False):
        try:
            source = await _parse_source(request)
            outcome = await run_in_threadpool(
                pipeline.analyze, source, profile, force_refresh=refresh
            )
        except (InsightError, ValueError) as exc:
            return _error_response(exc)
        return {
            "report": outcome.report.model_dump(mode="json"),
            "doc_hash": outcome.doc_hash,
            "timings": outcome.timings.model_dump(),
            "cache_hit": outcome.cache_hit,
            "validation": {
                "passed": outcome.validation.passed,
                "deficiencies": outcome.validation.deficiencies,
            },
            "grounding_ratio": outcome.grounding_ratio,
        }

    @app.post("/extract")
    async def extract(request: Request):
        try:
            source = await _parse_source(request)
            doc = await run_in_threadpool(pipeline.extract, source)
        except (InsightError, ValueError) as exc:
            return _error_response(exc)
        return {
            "doc_hash": doc.doc_hash,
            "markdown": doc.concatenated_text(),
            "structure_index": [entry.model_dump() for entry in doc.structure_index],
        }

    @app.get("/examples")
    def list_examples():
        return pipeline.examples.list_examples()

    @app.get("/examples/{example_id}/pdf")
    def example_pdf(example_id: str):
        try:
            data = pipeline.examples.pdf_bytes(example_id)
        except (UnknownExample, SourceError, OcrError) as exc:
            return _error_response(exc)
        return Response(content=data, media_type="application/pdf")

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "versions": {"insightmap": __version__},
            "providers_configured": {
                "ocr": config.ocr is not None or config.mock,
                "model": config.model is not None or config.mock,
            },
        }

    return app
