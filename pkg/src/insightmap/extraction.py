"""Source resolution and OCR-driven text extraction.

The OCR stage sits behind a small provider interface with two
implementations: a live HTTP client for any endpoint that accepts a PDF
and returns per-page Markdown, and a fixture provider replaying recorded
responses so tests never touch the vendor.
"""

from __future__ import annotations

import base64
import hashlib
import json
import random
import time
from pathlib import Path
from typing import Protocol

import httpx
from pydantic import BaseModel, ConfigDict, model_validator

from .errors import (
    EmptyExtraction,
    NotAPdf,
    ProviderRejected,
    ProviderUnavailable,
    TooLarge,
    UnknownExample,
    UrlFetchFailed,
)
from .labels import LABEL_RE
from .model import DocumentSource, ExtractedDocument, PageText, SourceKind, SourceLabel

PDF_MAGIC = b"%PDF-"
DEFAULT_MAX_PDF_BYTES = 50 * 1024 * 1024
MAX_REDIRECTS = 5
OCR_MAX_ATTEMPTS = 3  # 1 initial try + 2 retries, transient failures only


class OcrProviderConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    endpoint_url: str
    api_key: str
    timeout_s: int = 120
    max_pdf_bytes: int = DEFAULT_MAX_PDF_BYTES
    max_retries: int = OCR_MAX_ATTEMPTS - 1
    backoff_base_s: float = 0.5

    @model_validator(mode="after")
    def _check(self) -> "OcrProviderConfig":
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.max_pdf_bytes <= 0:
            raise ValueError("max_pdf_bytes must be positive")
        return self


class OcrProvider(Protocol):
    def extract_pages(self, pdf: bytes) -> list[str]:
        """Return per-page Markdown for the given PDF bytes."""
        ...


def doc_hash(pdf: bytes) -> str:
    return hashlib.sha256(pdf).hexdigest()


def _decode_pages(payload: str) -> list[str]:
    """Decode the provider wire response: JSON {"pages": [{"index", "markdown"}]}."""
    try:
        body = json.loads(payload)
        pages = body["pages"]
        return [p["markdown"] for p in sorted(pages, key=lambda p: p["index"])]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ProviderRejected(f"malformed provider response: {exc}") from exc


class HttpOcrProvider:
    """Live OCR client: POSTs the PDF base64-encoded with bearer auth."""

    def __init__(self, cfg: OcrProviderConfig):
        self.cfg = cfg

    def extract_pages(self, pdf: bytes) -> list[str]:
        body = {"document": base64.b64encode(pdf).decode("ascii")}
        headers = {"Authorization": f"Bearer {self.cfg.api_key}"}
        try:
            resp = httpx.post(
                self.cfg.endpoint_url,
                json=body,
                headers=headers,
                timeout=self.cfg.timeout_s,
            )
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"OCR request failed: {exc}") from exc
        if resp.status_code >= 500:
            raise ProviderUnavailable(f"OCR provider returned {resp.status_code}")
        if resp.status_code >= 400:
            raise ProviderRejected(
                f"OCR provider rejected request: {resp.status_code}",
                status_code=resp.status_code,
            )
        return _decode_pages(resp.text)


class FixtureOcrProvider:
    """Replays recorded provider responses, one file per request hash.

    A recording is the verbatim provider response body stored at
    <fixture_dir>/<sha256 of the pdf bytes>.json.
    """

    def __init__(self, fixture_dir: Path | str):
        self.fixture_dir = Path(fixture_dir)

    def record(self, pdf: bytes, response_body: str) -> Path:
        path = self.fixture_dir / f"{doc_hash(pdf)}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(response_body, encoding="utf-8")
        return path

    def extract_pages(self, pdf: bytes) -> list[str]:
        path = self.fixture_dir / f"{doc_hash(pdf)}.json"
        if not path.exists():
            raise ProviderRejected(f"no recorded OCR response for {doc_hash(pdf)}")
        return _decode_pages(path.read_text(encoding="utf-8"))


def resolve_source(
    src: DocumentSource,
    *,
    max_pdf_bytes: int = DEFAULT_MAX_PDF_BYTES,
    example_registry: "ExampleRegistry | None" = None,
) -> bytes:
    """Resolve a document source to raw PDF bytes.

    Verifies the PDF magic prefix and the size bound regardless of origin.
    """
    if src.kind is SourceKind.upload_bytes:
        data = src.data or b""
    elif src.kind is SourceKind.public_url:
        try:
            with httpx.Client(
                follow_redirects=True, max_redirects=MAX_REDIRECTS, timeout=60
            ) as client:
                resp = client.get(src.url, headers={"Accept": "application/pdf,*/*"})
        except httpx.TooManyRedirects as exc:
            raise UrlFetchFailed(f"too many redirects fetching {src.url}") from exc
        except httpx.HTTPError as exc:
            raise UrlFetchFailed(f"failed to fetch {src.url}: {exc}") from exc
        if resp.status_code >= 400:
            raise UrlFetchFailed(
                f"fetching {src.url} returned HTTP {resp.status_code}",
                status_code=resp.status_code,
            )
        data = resp.content
    else:
        if example_registry is None:
            raise UnknownExample("no example registry configured")
        data = example_registry.pdf_bytes(src.example_id)

    if len(data) > max_pdf_bytes:
        raise TooLarge(f"document is {len(data)} bytes, limit {max_pdf_bytes}")
    if not data.startswith(PDF_MAGIC):
        raise NotAPdf("payload does not start with the PDF magic prefix")
    return data


def build_structure_index(pages: list[PageText]) -> list[SourceLabel]:
    """Scan extracted Markdown for artifact labels, first occurrence wins."""
    seen: set[str] = set()
    index: list[SourceLabel] = []
    for page in pages:
        for match in LABEL_RE.finditer(page.markdown):
            key = " ".join(match.group(0).lower().split())
            if key in seen:
                continue
            seen.add(key)
            index.append(SourceLabel(label=match.group(0), page_no=page.page_no))
    return index


def extract_text(
    pdf: bytes,
    provider: OcrProvider,
    *,
    max_attempts: int = OCR_MAX_ATTEMPTS,
    backoff_base_s: float = 0.5,
    rng: random.Random | None = None,
) -> ExtractedDocument:
    """Drive the OCR provider and assemble an ExtractedDocument.

    Transient failures (ProviderUnavailable) are retried with exponential
    backoff up to max_attempts total tries; 4xx rejections never are.
    """
    if not pdf.startswith(PDF_MAGIC):
        raise NotAPdf("payload does not start with the PDF magic prefix")
    rng = rng or random.Random()
    last_exc: ProviderUnavailable | None = None
    for attempt in range(max_attempts):
        try:
            raw_pages = provider.extract_pages(pdf)
            break
        except ProviderUnavailable as exc:
            last_exc = exc
            if attempt + 1 < max_attempts:
                time.sleep(backoff_base_s * (2**attempt) * (1 + rng.random()))
    else:
        raise last_exc  # type: ignore[misc]

    if not raw_pages or not any(p.strip() for p in raw_pages):
        raise EmptyExtraction("OCR provider returned no text")

    pages = [PageText(page_no=i + 1, markdown=md) for i, md in enumerate(raw_pages)]
    return ExtractedDocument(
        doc_hash=doc_hash(pdf),
        pages=pages,
        structure_index=build_structure_index(pages),
        char_count=sum(len(p.markdown) for p in pages),
    )


class ExampleRegistry:
    """Bundled example documents, described by a manifest.json listing
    {id, title, pdf} entries. Duplicate ids fail at load, not at runtime."""

    def __init__(self, example_dir: Path | str):
        self.example_dir = Path(example_dir)
        manifest_path = self.example_dir / "manifest.json"
        if manifest_path.exists():
            entries = json.loads(manifest_path.read_text(encoding="utf-8"))
        else:
            entries = []
        ids = [e["id"] for e in entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate example ids in manifest")
        self._entries = {e["id"]: e for e in entries}

    def list_examples(self) -> list[dict[str, str]]:
        return [
            {"id": e["id"], "title": e["title"]}
            for e in sorted(self._entries.values(), key=lambda e: e["id"])
        ]

    def __contains__(self, example_id: str) -> bool:
        return example_id in self._entries

    def pdf_path(self, example_id: str) -> Path:
        entry = self._entries.get(example_id)
        if entry is None:
            raise UnknownExample(f"unknown example id: {example_id!r}")
        return self.example_dir / entry["pdf"]

    def pdf_bytes(self, example_id: str) -> bytes:
        return self.pdf_path(example_id).read_bytes()
