"""Deterministic rendering of an InsightReport to canonical Markdown.

The canonical layout is one H2 header per report section, in the order the
comparison dimensions are reported: sectional analyses, key contributions,
limitations, critical questions, evidence references, navigation tips.
Empty sections are omitted entirely.
"""

from __future__ import annotations

from .model import (
    SECTION_TITLES,
    EvidenceRef,
    InsightReport,
    SignalledBullet,
)

CONTRIBUTIONS_HEADER = "Key Contributions"
LIMITATIONS_HEADER = "Limitations"
QUESTIONS_HEADER = "Critical Questions"
EVIDENCE_HEADER = "Evidence References"
NAVIGATION_HEADER = "Navigation Tips"

PATH_SEPARATOR = " → "
GROUNDED_MARK = "[grounded]"
UNGROUNDED_MARK = "[ungrounded]"


def _signal_prefix(signals) -> str:
    return "".join(f"{s.token} " for s in signals)


def _bullet(b: SignalledBullet) -> str:
    return f"- {_signal_prefix(b.signals)}{b.text}"


def _evidence_bullet(ref: EvidenceRef) -> str:
    line = f"- **{ref.label}**: {ref.rationale}"
    if ref.grounded is True:
        line += f" {GROUNDED_MARK}"
    elif ref.grounded is False:
        line += f" {UNGROUNDED_MARK}"
    return line


def render_report(report: InsightReport) -> str:
    """Render a report to canonical Markdown. Pure and deterministic."""
    blocks: list[str] = []

    for section in report.sectional:
        lines = [f"## {SECTION_TITLES[section.section_kind]}", ""]
        lines.extend(_bullet(b) for b in section.bullets)
        blocks.append("\n".join(lines))

    if report.key_contributions:
        lines = [f"## {CONTRIBUTIONS_HEADER}", ""]
        lines.extend(
            f"- {_signal_prefix(c.signals)}**{c.title}**: {c.detail}"
            for c in report.key_contributions
        )
        blocks.append("\n".join(lines))

    if report.limitations:
        lines = [f"## {LIMITATIONS_HEADER}", ""]
        lines.extend(_bullet(b) for b in report.limitations)
        blocks.append("\n".join(lines))

    if report.critical_questions:
        lines = [f"## {QUESTIONS_HEADER}", ""]
        lines.extend(f"- **{qa.question}** {qa.answer}" for qa in report.critical_questions)
        blocks.append("\n".join(lines))

    if report.evidence_refs:
        lines = [f"## {EVIDENCE_HEADER}", ""]
        lines.extend(_evidence_bullet(ref) for ref in report.evidence_refs)
        blocks.append("\n".join(lines))

    if report.navigation_tips:
        lines = [f"## {NAVIGATION_HEADER}", ""]
        lines.extend(
            f"- {tip.goal}: {PATH_SEPARATOR.join(tip.path)}" for tip in report.navigation_tips
        )
        blocks.append("\n".join(lines))

    return "\n\n".join(blocks) + ("\n" if blocks else "")
