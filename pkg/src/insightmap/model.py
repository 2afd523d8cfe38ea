"""Shared domain types: documents, priority signals, and the insight report.

All types are immutable after construction (frozen pydantic models) and
safe to share across threads.
"""

from __future__ import annotations

import enum
from datetime import datetime

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class SourceKind(str, enum.Enum):
    upload_bytes = "upload_bytes"
    public_url = "public_url"
    bundled_example = "bundled_example"


class DocumentSource(BaseModel):
    """A PDF identified by upload bytes, a public URL, or a bundled example id."""

    model_config = ConfigDict(frozen=True)

    kind: SourceKind
    data: bytes | None = None
    url: str | None = None
    example_id: str | None = None

    @model_validator(mode="after")
    def _check_payload(self) -> "DocumentSource":
        if self.kind is SourceKind.upload_bytes:
            if not self.data:
                raise ValueError("upload payload must be non-empty")
        elif self.kind is SourceKind.public_url:
            if not self.url or not self.url.startswith(("http://", "https://")):
                raise ValueError("url must be an absolute http(s) URL")
        elif self.kind is SourceKind.bundled_example:
            if not self.example_id:
                raise ValueError("example_id required")
        return self

    @classmethod
    def from_bytes(cls, data: bytes) -> "DocumentSource":
        return cls(kind=SourceKind.upload_bytes, data=data)

    @classmethod
    def from_url(cls, url: str) -> "DocumentSource":
        return cls(kind=SourceKind.public_url, url=url)

    @classmethod
    def from_example(cls, example_id: str) -> "DocumentSource":
        return cls(kind=SourceKind.bundled_example, example_id=example_id)


class PageText(BaseModel):
    model_config = ConfigDict(frozen=True)

    page_no: int  # 1-based
    markdown: str


class SourceLabel(BaseModel):
    """An in-paper artifact anchor found in the extracted text, e.g. "Table 2"."""

    model_config = ConfigDict(frozen=True)

    label: str
    page_no: int


class ExtractedDocument(BaseModel):
    """OCR output: page-anchored Markdown plus a structural index of labels."""

    model_config = ConfigDict(frozen=True)

    doc_hash: str
    pages: list[PageText]
    structure_index: list[SourceLabel]
    char_count: int

    @model_validator(mode="after")
    def _check(self) -> "ExtractedDocument":
        if not self.pages:
            raise ValueError("extraction must yield at least one page")
        nos = [p.page_no for p in self.pages]
        if nos != sorted(nos) or len(set(nos)) != len(nos):
            raise ValueError("page numbers must be strictly increasing")
        text = self.concatenated_text().lower()
        for entry in self.structure_index:
            if entry.label.lower() not in text:
                raise ValueError(f"structure_index label {entry.label!r} not found in text")
        return self

    def concatenated_text(self) -> str:
        return "\n".join(p.markdown for p in self.pages)


class SignalKind(str, enum.Enum):
    innovation = "innovation"
    limitation = "limitation"
    high_impact_evidence = "high_impact_evidence"


SIGNAL_TOKENS: dict[SignalKind, str] = {
    SignalKind.innovation: "[INNOVATION]",
    SignalKind.limitation: "[LIMITATION]",
    SignalKind.high_impact_evidence: "[EVIDENCE]",
}

# Glyph aliases map display icons back to canonical tokens; extended by the
# prompt config's signal_aliases table.
DEFAULT_SIGNAL_ALIASES: dict[str, SignalKind] = {
    "💡": SignalKind.innovation,
    "⚠️": SignalKind.limitation,
    "📊": SignalKind.high_impact_evidence,
}


class PrioritySignal(BaseModel):
    """Categorical marker flagging a bullet as innovation, limitation, or
    high-impact evidence."""

    model_config = ConfigDict(frozen=True)

    kind: SignalKind
    token: str

    @model_validator(mode="after")
    def _check(self) -> "PrioritySignal":
        if self.token != SIGNAL_TOKENS[self.kind]:
            raise ValueError(f"token {self.token!r} is not canonical for {self.kind}")
        return self

    @classmethod
    def of(cls, kind: SignalKind) -> "PrioritySignal":
        return cls(kind=kind, token=SIGNAL_TOKENS[kind])


def canonical_signal(
    token: str, aliases: dict[str, SignalKind] | None = None
) -> PrioritySignal | None:
    """Map a canonical token or registered glyph alias to its signal.

    Unknown tokens yield None, never an error.
    """
    token = token.strip()
    for kind, canonical in SIGNAL_TOKENS.items():
        if token == canonical:
            return PrioritySignal.of(kind)
    table = dict(DEFAULT_SIGNAL_ALIASES)
    if aliases:
        table.update(aliases)
    kind = table.get(token)
    return PrioritySignal.of(kind) if kind is not None else None


class SectionKind(str, enum.Enum):
    abstract_intro = "abstract_intro"
    methods = "methods"
    results = "results"
    discussion = "discussion"


SECTION_TITLES: dict[SectionKind, str] = {
    SectionKind.abstract_intro: "Abstract & Introduction",
    SectionKind.methods: "Methods",
    SectionKind.results: "Results",
    SectionKind.discussion: "Discussion",
}


class SignalledBullet(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    signals: list[PrioritySignal] = []

    @field_validator("text")
    @classmethod
    def _non_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("bullet text must be non-empty")
        return v


class SectionInsight(BaseModel):
    model_config = ConfigDict(frozen=True)

    section_kind: SectionKind
    bullets: list[SignalledBullet]


class Contribution(BaseModel):
    model_config = ConfigDict(frozen=True)

    title: str
    detail: str
    signals: list[PrioritySignal] = []

    @field_validator("title")
    @classmethod
    def _non_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("contribution title must be non-empty")
        return v


class CriticalQA(BaseModel):
    model_config = ConfigDict(frozen=True)

    question: str
    answer: str


class EvidenceRef(BaseModel):
    """Pointer to an in-paper artifact; grounded is set by the grounding check."""

    model_config = ConfigDict(frozen=True)

    label: str
    rationale: str
    grounded: bool | None = None


class NavTip(BaseModel):
    """Goal-conditioned, ordered reading path through the paper."""

    model_config = ConfigDict(frozen=True)

    goal: str
    path: list[str]

    @field_validator("path")
    @classmethod
    def _non_empty_path(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("navigation path must be non-empty")
        return v


class InsightReport(BaseModel):
    """The structured analytical output replacing a prose summary.

    Sectional minimality (at least one section) is enforced by the report
    validator rather than here, so tolerant parsing of partial model output
    can still produce a report.
    """

    model_config = ConfigDict(frozen=True)

    sectional: list[SectionInsight] = []
    key_contributions: list[Contribution] = []
    limitations: list[SignalledBullet] = []
    critical_questions: list[CriticalQA] = []
    evidence_refs: list[EvidenceRef] = []
    navigation_tips: list[NavTip] = []
    raw_model_text: str = ""

    @field_validator("sectional")
    @classmethod
    def _unique_kinds(cls, v: list[SectionInsight]) -> list[SectionInsight]:
        kinds = [s.section_kind for s in v]
        if len(set(kinds)) != len(kinds):
            raise ValueError("section kinds must be unique within sectional")
        return v

    def present_sections(self) -> set[SectionKind]:
        return {s.section_kind for s in self.sectional}


def reports_structurally_equal(a: InsightReport, b: InsightReport) -> bool:
    """Structural equality ignoring raw_model_text (which holds the verbatim
    model output and differs across a render/parse round trip)."""
    dump_a = a.model_dump(exclude={"raw_model_text"})
    dump_b = b.model_dump(exclude={"raw_model_text"})
    return dump_a == dump_b


class ReadingProfile(BaseModel):
    """A named system-prompt configuration encoding a reading methodology."""

    model_config = ConfigDict(frozen=True)

    id: str
    display_name: str
    system_prompt: str
    required_sections: list[SectionKind]
    critical_question_set: list[str]

    @field_validator("system_prompt")
    @classmethod
    def _non_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("system_prompt must be non-empty")
        return v


class Timings(BaseModel):
    model_config = ConfigDict(frozen=True)

    ocr_ms: int = 0
    llm_ms: int = 0
    parse_ms: int = 0

    @model_validator(mode="after")
    def _non_negative(self) -> "Timings":
        if min(self.ocr_ms, self.llm_ms, self.parse_ms) < 0:
            raise ValueError("timings must be non-negative")
        return self


class AnalysisRecord(BaseModel):
    """Cached pairing of (doc_hash, profile_id, model_id) with its report."""

    model_config = ConfigDict(frozen=True)

    doc_hash: str
    profile_id: str
    model_id: str
    report: InsightReport
    created_at: datetime
    timings: Timings
