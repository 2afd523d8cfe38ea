"""insightmap: guided-reading analysis of scientific PDFs.

Turns a PDF into a structured, validated insight map (sectional analyses,
key contributions, limitations, critical questions, grounded evidence
pointers, non-linear reading paths) via an OCR stage and an
opinionated-prompt LLM stage.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    AnalysisRecord,
    DocumentSource,
    ExtractedDocument,
    InsightReport,
    PrioritySignal,
    ReadingProfile,
    SectionKind,
    SignalKind,
    canonical_signal,
)
from .parsing import ground_report, parse_report, validate_report  # noqa: F401
from .render import render_report  # noqa: F401
