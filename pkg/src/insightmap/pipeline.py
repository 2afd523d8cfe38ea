"""End-to-end orchestration: resolve → extract → prompt → complete →
parse → ground → validate, with a content-addressed record cache and a
bounded-concurrency guard shared by the service and the CLI."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from .cache import RecordCache
from .extraction import (
    ExampleRegistry,
    OcrProvider,
    doc_hash as pdf_hash,
    extract_text,
    resolve_source,
)
from .gateway import ModelGateway
from .model import (
    AnalysisRecord,
    DocumentSource,
    ExtractedDocument,
    InsightReport,
    Timings,
)
from .parsing import ValidationResult, ground_report, grounding_ratio, parse_report, validate_report
from .prompts import ProfileRegistry, build_guided_prompt
from .errors import InsightError

DEFAULT_MAX_CONCURRENT = 4
QUEUE_CAP = 100


class UnknownProfile(InsightError):
    stage = "resolve"


class QueueFull(InsightError):
    stage = "resolve"


@dataclass(frozen=True)
class AnalysisOutcome:
    report: InsightReport
    doc_hash: str
    timings: Timings
    cache_hit: bool
    validation: ValidationResult
    grounding_ratio: float


class ConcurrencyGuard:
    """Bounded in-flight counter with queue-depth accounting.

    Callers beyond the in-flight bound wait; callers beyond the queue cap
    are rejected. max_observed is exposed for tests of the bound."""

    def __init__(self, limit: int, queue_cap: int = QUEUE_CAP):
        self._sem = threading.Semaphore(limit)
        self._lock = threading.Lock()
        self._queue_cap = queue_cap
        self.limit = limit
        self.in_flight = 0
        self.max_observed = 0
        self.waiting = 0

    def __enter__(self):
        with self._lock:
            if self.waiting >= self._queue_cap:
                raise QueueFull("analysis queue is full")
            self.waiting += 1
        self._sem.acquire()
        with self._lock:
            self.waiting -= 1
            self.in_flight += 1
            self.max_observed = max(self.max_observed, self.in_flight)
        return self

    def __exit__(self, *exc):
        with self._lock:
            self.in_flight -= 1
        self._sem.release()
        return False


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


class AnalysisPipeline:
    def __init__(
        self,
        registry: ProfileRegistry,
        ocr_provider: OcrProvider,
        gateway: ModelGateway,
        cache: RecordCache,
        examples: ExampleRegistry,
        *,
        max_pdf_bytes: int | None = None,
        max_concurrent: int = DEFAULT_MAX_CONCURRENT,
        ocr_max_attempts: int = 3,
        ocr_backoff_base_s: float = 0.5,
    ):
        self.registry = registry
        self.ocr_provider = ocr_provider
        self.gateway = gateway
        self.cache = cache
        self.examples = examples
        self.max_pdf_bytes = max_pdf_bytes or 50 * 1024 * 1024
        self.guard = ConcurrencyGuard(max_concurrent)
        self.ocr_max_attempts = ocr_max_attempts
        self.ocr_backoff_base_s = ocr_backoff_base_s

    def _resolve(self, source: DocumentSource) -> bytes:
        return resolve_source(
            source, max_pdf_bytes=self.max_pdf_bytes, example_registry=self.examples
        )

    def extract(self, source: DocumentSource) -> ExtractedDocument:
        pdf = self._resolve(source)
        return extract_text(
            pdf,
            self.ocr_provider,
            max_attempts=self.ocr_max_attempts,
            backoff_base_s=self.ocr_backoff_base_s,
        )

    def analyze(
        self,
        source: DocumentSource,
        profile_id: str,
        *,
        force_refresh: bool = False,
    ) -> AnalysisOutcome:
        profile = self.registry.get(profile_id)
        if profile is None:
            raise UnknownProfile(f"unknown profile id: {profile_id!r}")

        with self.guard:
            pdf = self._resolve(source)
            digest = pdf_hash(pdf)

            if not force_refresh:
                cached = self.cache.get(digest, profile_id, self.gateway.model_id)
                if cached is not None:
                    return AnalysisOutcome(
                        report=cached.report,
                        doc_hash=digest,
                        timings=cached.timings,
                        cache_hit=True,
                        validation=validate_report(cached.report, profile),
                        grounding_ratio=grounding_ratio(cached.report),
                    )

            t0 = time.perf_counter()
            doc = extract_text(
                pdf,
                self.ocr_provider,
                max_attempts=self.ocr_max_attempts,
                backoff_base_s=self.ocr_backoff_base_s,
            )
            ocr_ms = _ms(t0)

            payload = build_guided_prompt(doc, profile)
            t1 = time.perf_counter()
            completion = self.gateway.complete(payload)
            llm_ms = _ms(t1)

            t2 = time.perf_counter()
            report = parse_report(completion.text, self.registry.signal_aliases)
            report = ground_report(report, doc)
            validation = validate_report(report, profile)
            parse_ms = _ms(t2)

            timings = Timings(ocr_ms=ocr_ms, llm_ms=llm_ms, parse_ms=parse_ms)
            record = AnalysisRecord(
                doc_hash=digest,
                profile_id=profile_id,
                model_id=self.gateway.model_id,
                report=report,
                created_at=datetime.now(timezone.utc),
                timings=timings,
            )
            self.cache.put(record)
            return AnalysisOutcome(
                report=report,
                doc_hash=digest,
                timings=timings,
                cache_hit=False,
                validation=validation,
                grounding_ratio=grounding_ratio(report),
            )
