"""Exception hierarchy shared across the pipeline.

Every error that can surface through the HTTP service carries enough
context (stage, status) for the service layer to attribute the failure
to exactly one pipeline stage.
"""

from __future__ import annotations


class InsightError(Exception):
    """Base class for all package errors."""


# --- source resolution ---

class SourceError(InsightError):
    stage = "resolve"


class UrlFetchFailed(SourceError):
    def __init__(self, message: str, status_code: int | None = None):
        super().__init__(message)
        self.status_code = status_code


class NotAPdf(SourceError):
    pass


class TooLarge(SourceError):
    pass


class UnknownExample(SourceError):
    pass


# --- OCR provider ---

class OcrError(InsightError):
    stage = "ocr"


class ProviderUnavailable(OcrError):
    """Transient provider failure (timeout / 5xx), retried with backoff."""


class ProviderRejected(OcrError):
    """Permanent provider failure (4xx), never retried."""

    def __init__(self, message: str, status_code: int | None = None):
        super().__init__(message)
        self.status_code = status_code


class EmptyExtraction(OcrError):
    pass


# --- model gateway ---

class ModelError(InsightError):
    stage = "llm"


class ModelUnavailable(ModelError):
    """Retries exhausted against the completion endpoint."""


class ModelRejected(ModelError):
    def __init__(self, message: str, status_code: int | None = None):
        super().__init__(message)
        self.status_code = status_code


class EmptyCompletion(ModelError):
    pass


# --- parsing ---

class ParseError(InsightError):
    stage = "parse"


class EmptyInput(ParseError):
    pass


class NoRecognizedSections(ParseError):
    """The model output contains no recognizable template headers.

    Carries the raw text so callers can still show something.
    """

    def __init__(self, raw_text: str):
        super().__init__("no recognized section headers in model output")
        self.raw_text = raw_text


# --- prompt configuration ---

class PromptConfigError(InsightError):
    pass


class ConfigMalformed(PromptConfigError):
    pass


class MissingDefaultProfile(PromptConfigError):
    pass


class PromptMissingRequiredComponent(PromptConfigError):
    def __init__(self, profile_id: str, component: str, detail: str):
        super().__init__(f"profile {profile_id!r} missing component {component}: {detail}")
        self.profile_id = profile_id
        self.component = component
