"""Tolerant parsing of raw model Markdown into an InsightReport, plus the
grounding check and report validation.

Parsing is deliberately forgiving (header case, punctuation, blank lines,
synonym headers); strictness lives in validate_report. Any input with zero
recognizable headers raises NoRecognizedSections rather than producing a
partially hallucinated report.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

from .errors import EmptyInput, NoRecognizedSections
from .labels import leading_label
from .model import (
    Contribution,
    CriticalQA,
    EvidenceRef,
    ExtractedDocument,
    InsightReport,
    NavTip,
    PrioritySignal,
    ReadingProfile,
    SECTION_TITLES,
    SectionInsight,
    SectionKind,
    SignalKind,
    SignalledBullet,
    canonical_signal,
)
from .render import GROUNDED_MARK, UNGROUNDED_MARK

# Report parts beyond the four sectional kinds.
_CONTRIBUTIONS = "key_contributions"
_LIMITATIONS = "limitations"
_QUESTIONS = "critical_questions"
_EVIDENCE = "evidence_refs"
_NAVIGATION = "navigation_tips"

HEADER_SYNONYMS: dict[str, SectionKind | str] = {
    # sectional
    "abstract introduction": SectionKind.abstract_intro,
    "abstract and introduction": SectionKind.abstract_intro,
    "abstract intro": SectionKind.abstract_intro,
    "introduction": SectionKind.abstract_intro,
    "abstract": SectionKind.abstract_intro,
    "methods": SectionKind.methods,
    "methodology": SectionKind.methods,
    "results": SectionKind.results,
    "findings": SectionKind.results,
    "discussion": SectionKind.discussion,
    "conclusion": SectionKind.discussion,
    "discussion and conclusion": SectionKind.discussion,
    # other report parts
    "key contributions": _CONTRIBUTIONS,
    "contributions": _CONTRIBUTIONS,
    "key contribution": _CONTRIBUTIONS,
    "limitations": _LIMITATIONS,
    "methodological limitations": _LIMITATIONS,
    "critical questions": _QUESTIONS,
    "preemptive critical questions": _QUESTIONS,
    "critical evaluation": _QUESTIONS,
    "evidence references": _EVIDENCE,
    "evidence": _EVIDENCE,
    "in paper evidence": _EVIDENCE,
    "evidence pointers": _EVIDENCE,
    "navigation tips": _NAVIGATION,
    "non linear navigation tips": _NAVIGATION,
    "reader guidance": _NAVIGATION,
    "reading guide": _NAVIGATION,
    "actionable guidance": _NAVIGATION,
}

_HEADER_RE = re.compile(r"^\s{0,3}(#{1,6})\s+(.*?)\s*#*\s*$")
_BULLET_RE = re.compile(r"^\s*[-*•]\s+(.*\S)\s*$")
_BOLD_LEAD_RE = re.compile(r"^\*\*(.+?)\*\*:?\s*(.*)$", re.DOTALL)
_ARROW_SPLIT_RE = re.compile(r"\s*(?:→|->)\s*")


def normalize_header(text: str) -> str:
    """Lowercase, drop punctuation/emoji/markup, collapse whitespace."""
    out: list[str] = []
    for ch in text:
        if ch.isalnum() or ch.isspace():
            out.append(ch.lower())
        elif unicodedata.category(ch).startswith("P") or ord(ch) > 0x2000:
            out.append(" ")
    return " ".join("".join(out).split())


def _signal_tokens(aliases: dict[str, SignalKind] | None) -> list[str]:
    from .model import DEFAULT_SIGNAL_ALIASES, SIGNAL_TOKENS

    tokens = list(SIGNAL_TOKENS.values()) + list(DEFAULT_SIGNAL_ALIASES)
    if aliases:
        tokens.extend(aliases)
    return sorted(set(tokens), key=len, reverse=True)


def _lift_signals(
    text: str, aliases: dict[str, SignalKind] | None
) -> tuple[list[PrioritySignal], str]:
    """Strip leading signal tokens/aliases from a bullet."""
    signals: list[PrioritySignal] = []
    rest = text.strip()
    tokens = _signal_tokens(aliases)
    while rest:
        hit = next((t for t in tokens if rest.startswith(t)), None)
        if hit is None:
            break
        sig = canonical_signal(hit, aliases)
        assert sig is not None
        signals.append(sig)
        rest = rest[len(hit):].lstrip()
    return signals, rest.strip()


def _parse_contribution(text: str, aliases) -> Contribution:
    signals, rest = _lift_signals(text, aliases)
    m = _BOLD_LEAD_RE.match(rest)
    if m:
        return Contribution(title=m.group(1), detail=m.group(2).strip(), signals=signals)
    title, sep, detail = rest.partition(": ")
    if sep:
        return Contribution(title=title, detail=detail.strip(), signals=signals)
    return Contribution(title=rest, detail="", signals=signals)


def _parse_qa(text: str) -> CriticalQA:
    m = _BOLD_LEAD_RE.match(text)
    if m:
        return CriticalQA(question=m.group(1), answer=m.group(2).strip())
    question, sep, answer = text.partition("? ")
    if sep:
        return CriticalQA(question=question + "?", answer=answer.strip())
    return CriticalQA(question=text, answer="")


def _parse_evidence(text: str) -> EvidenceRef:
    grounded: bool | None = None
    if text.endswith(GROUNDED_MARK):
        grounded = True
        text = text[: -len(GROUNDED_MARK)].rstrip()
    elif text.endswith(UNGROUNDED_MARK):
        grounded = False
        text = text[: -len(UNGROUNDED_MARK)].rstrip()
    m = _BOLD_LEAD_RE.match(text)
    if m:
        return EvidenceRef(label=m.group(1), rationale=m.group(2).strip(), grounded=grounded)
    label = leading_label(text)
    if label:
        rationale = text[len(label):].lstrip(" :.-—")
        return EvidenceRef(label=label, rationale=rationale, grounded=grounded)
    return EvidenceRef(label=text, rationale="", grounded=grounded)


def _parse_navtip(text: str) -> NavTip | None:
    goal, sep, path_text = text.partition(":")
    if not sep:
        return None
    steps = [s for s in _ARROW_SPLIT_RE.split(path_text.strip()) if s]
    if not steps:
        return None
    return NavTip(goal=goal.strip(), path=steps)


@dataclass
class ParsedReport:
    report: InsightReport
    unrecognized_headers: list[str] = field(default_factory=list)


def parse_report_details(
    raw: str, aliases: dict[str, SignalKind] | None = None
) -> ParsedReport:
    """Parse raw model Markdown, also reporting headers the grammar ignored."""
    if not raw or not raw.strip():
        raise EmptyInput("model output is empty")

    # Segment the document by recognized headers.
    current: SectionKind | str | None = None
    buckets: dict[SectionKind | str, list[str]] = {}
    unrecognized: list[str] = []
    matched_any = False

    for line in raw.splitlines():
        m = _HEADER_RE.match(line)
        if m:
            target = HEADER_SYNONYMS.get(normalize_header(m.group(2)))
            if target is None:
                unrecognized.append(m.group(2).strip())
                current = None
            else:
                matched_any = True
                current = target
                buckets.setdefault(target, [])
            continue
        if current is not None:
            buckets[current].append(line)

    if not matched_any:
        raise NoRecognizedSections(raw)

    sectional: list[SectionInsight] = []
    contributions: list[Contribution] = []
    limitations: list[SignalledBullet] = []
    questions: list[CriticalQA] = []
    evidence: list[EvidenceRef] = []
    tips: list[NavTip] = []

    for target, lines in buckets.items():
        bullets = [m.group(1) for m in map(_BULLET_RE.match, lines) if m]
        if isinstance(target, SectionKind):
            section_bullets = []
            for text in bullets:
                signals, rest = _lift_signals(text, aliases)
                if rest:
                    section_bullets.append(SignalledBullet(text=rest, signals=signals))
            sectional.append(SectionInsight(section_kind=target, bullets=section_bullets))
        elif target == _CONTRIBUTIONS:
            contributions.extend(_parse_contribution(t, aliases) for t in bullets)
        elif target == _LIMITATIONS:
            for text in bullets:
                signals, rest = _lift_signals(text, aliases)
                if rest:
                    limitations.append(SignalledBullet(text=rest, signals=signals))
        elif target == _QUESTIONS:
            questions.extend(_parse_qa(t) for t in bullets)
        elif target == _EVIDENCE:
            evidence.extend(_parse_evidence(t) for t in bullets)
        elif target == _NAVIGATION:
            tips.extend(t for t in map(_parse_navtip, bullets) if t is not None)

    report = InsightReport(
        sectional=sectional,
        key_contributions=contributions,
        limitations=limitations,
        critical_questions=questions,
        evidence_refs=evidence,
        navigation_tips=tips,
        raw_model_text=raw,
    )
    return ParsedReport(report=report, unrecognized_headers=unrecognized)


def parse_report(raw: str, aliases: dict[str, SignalKind] | None = None) -> InsightReport:
    """Parse raw model Markdown into an InsightReport."""
    return parse_report_details(raw, aliases).report


def ground_report(report: InsightReport, doc: ExtractedDocument) -> InsightReport:
    """Set each evidence ref's grounded flag by literal (case-insensitive)
    occurrence in the extracted text. String-level check only: grounded=true
    guarantees an exact occurrence exists, nothing more."""
    haystack = doc.concatenated_text().lower()
    refs = [
        ref.model_copy(update={"grounded": ref.label.lower() in haystack})
        for ref in report.evidence_refs
    ]
    return report.model_copy(update={"evidence_refs": refs})


def grounding_ratio(report: InsightReport) -> float:
    """Fraction of evidence refs that are grounded; 1.0 when there are none."""
    if not report.evidence_refs:
        return 1.0
    grounded = sum(1 for r in report.evidence_refs if r.grounded)
    return grounded / len(report.evidence_refs)


@dataclass(frozen=True)
class ValidationResult:
    passed: bool
    deficiencies: list[str]


def validate_report(report: InsightReport, profile: ReadingProfile) -> ValidationResult:
    """Check a parsed report against a profile's structural requirements.

    Returns a result object, never raises: a failing report is still a
    usable (degraded) report.
    """
    deficiencies: list[str] = []
    present = report.present_sections()
    if not report.sectional:
        deficiencies.append("no-sections")
    for kind in profile.required_sections:
        if kind not in present:
            deficiencies.append(f"missing-section:{SECTION_TITLES[kind]}")
    if not report.key_contributions:
        deficiencies.append("no-key-contributions")
    if not any(qa.answer.strip() for qa in report.critical_questions):
        deficiencies.append("no-critical-questions")
    return ValidationResult(passed=not deficiencies, deficiencies=deficiencies)
