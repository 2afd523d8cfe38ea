"""Comparative-evaluation scorer: operationalizes the seven analysis
dimensions of the guided-vs-baseline comparison as deterministic yes/no
checks over raw model output.

The thresholds are fixed, named constants so the qualitative comparison
becomes an executable test:
  MIN_SECTIONAL_HEADERS  — a real sectional deconstruction needs >= 3
                           distinct per-section analyses.
  STRUCTURED_LINE_RATIO  — "structured output" means at least 30% of
                           non-empty lines are headers or bullets.
  CONTRIBUTION_CUES      — prose fallback: a summary sentence still counts
                           as identifying the contribution if it uses one
                           of these verbs.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass

from .errors import NoRecognizedSections
from .gateway import ModelGateway
from .model import ExtractedDocument, InsightReport
from .parsing import ground_report, parse_report
from .prompts import ProfileRegistry, build_baseline_prompt, build_guided_prompt

MIN_SECTIONAL_HEADERS = 3
STRUCTURED_LINE_RATIO = 0.3
CONTRIBUTION_CUES = ("introduces", "proposes", "presents")

_STRUCTURED_LINE_RE = re.compile(r"^\s*(?:#{1,6}\s+\S|[-*•]\s+\S|\d+\.\s+\S)")


class Dimension(str, enum.Enum):
    structural_deconstruction = "StructuralDeconstruction"
    key_contribution = "KeyContribution"
    limitations = "Limitations"
    critical_questions = "CriticalQuestions"
    evidence_refs = "EvidenceRefs"
    actionable_guidance = "ActionableGuidance"
    output_format = "OutputFormat"


@dataclass(frozen=True)
class DimensionScore:
    dimension: Dimension
    satisfied: bool
    evidence: str


def structured_line_ratio(raw: str) -> float:
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    if not lines:
        return 0.0
    structured = sum(1 for ln in lines if _STRUCTURED_LINE_RE.match(ln))
    return structured / len(lines)


def _has_contribution_cue(raw: str) -> str | None:
    low = raw.lower()
    return next((cue for cue in CONTRIBUTION_CUES if cue in low), None)


def score_output(raw: str, doc: ExtractedDocument) -> list[DimensionScore]:
    """Score one raw model output against the seven dimensions.

    Prose without recognizable headers (the baseline shape) is scored with
    an empty report; only the cue-phrase and format checks can then fire.
    """
    try:
        report: InsightReport = ground_report(parse_report(raw), doc)
    except NoRecognizedSections:
        report = InsightReport(raw_model_text=raw)

    scores: list[DimensionScore] = []

    n_sections = len(report.sectional)
    scores.append(
        DimensionScore(
            Dimension.structural_deconstruction,
            n_sections >= MIN_SECTIONAL_HEADERS,
            f"{n_sections} sectional analyses (need >= {MIN_SECTIONAL_HEADERS})",
        )
    )

    if report.key_contributions:
        contrib = DimensionScore(
            Dimension.key_contribution,
            True,
            f"{len(report.key_contributions)} contributions parsed",
        )
    else:
        cue = _has_contribution_cue(raw)
        contrib = DimensionScore(
            Dimension.key_contribution,
            cue is not None,
            f"cue phrase {cue!r} found in prose" if cue else "no contribution identified",
        )
    scores.append(contrib)

    scores.append(
        DimensionScore(
            Dimension.limitations,
            bool(report.limitations),
            f"{len(report.limitations)} limitation bullets",
        )
    )
    answered = [qa for qa in report.critical_questions if qa.answer.strip()]
    scores.append(
        DimensionScore(
            Dimension.critical_questions,
            bool(answered),
            f"{len(answered)} answered critical questions",
        )
    )
    grounded = [r for r in report.evidence_refs if r.grounded]
    scores.append(
        DimensionScore(
            Dimension.evidence_refs,
            bool(grounded),
            f"{len(grounded)} grounded evidence refs of {len(report.evidence_refs)}",
        )
    )
    scores.append(
        DimensionScore(
            Dimension.actionable_guidance,
            bool(report.navigation_tips),
            f"{len(report.navigation_tips)} navigation tips",
        )
    )
    ratio = structured_line_ratio(raw)
    scores.append(
        DimensionScore(
            Dimension.output_format,
            ratio >= STRUCTURED_LINE_RATIO,
            f"structured-line ratio {ratio:.2f} (need >= {STRUCTURED_LINE_RATIO})",
        )
    )
    return scores


@dataclass(frozen=True)
class ComparisonRow:
    dimension: Dimension
    guided: bool
    baseline: bool
    evidence: str


@dataclass(frozen=True)
class ComparisonTable:
    rows: list[ComparisonRow]
    guided_satisfied: int
    baseline_satisfied: int

    def to_markdown(self) -> str:
        lines = [
            "| Dimension | Guided | Baseline | Evidence (guided) |",
            "| --- | --- | --- | --- |",
        ]
        for row in self.rows:
            lines.append(
                f"| {row.dimension.value} | {'yes' if row.guided else 'no'} "
                f"| {'yes' if row.baseline else 'no'} | {row.evidence} |"
            )
        lines.append("")
        lines.append(
            f"Satisfied dimensions: guided {self.guided_satisfied}/7, "
            f"baseline {self.baseline_satisfied}/7"
        )
        return "\n".join(lines)

    def to_json(self) -> str:
        rows = [
            {
                "dimension": r.dimension.value,
                "guided": r.guided,
                "baseline": r.baseline,
                "evidence": r.evidence,
            }
            for r in self.rows
        ]
        return json.dumps(
            {
                "rows": rows,
                "guided_satisfied": self.guided_satisfied,
                "baseline_satisfied": self.baseline_satisfied,
            },
            indent=2,
        )


def build_comparison(
    guided_scores: list[DimensionScore], baseline_scores: list[DimensionScore]
) -> ComparisonTable:
    rows = [
        ComparisonRow(
            dimension=g.dimension,
            guided=g.satisfied,
            baseline=b.satisfied,
            evidence=g.evidence,
        )
        for g, b in zip(guided_scores, baseline_scores)
    ]
    return ComparisonTable(
        rows=rows,
        guided_satisfied=sum(r.guided for r in rows),
        baseline_satisfied=sum(r.baseline for r in rows),
    )


def compare(
    doc: ExtractedDocument,
    registry: ProfileRegistry,
    gateway: ModelGateway,
    profile_id: str,
) -> ComparisonTable:
    """Run guided and baseline prompts on the same document and model,
    then score both outputs side by side."""
    profile = registry.get(profile_id)
    if profile is None:
        raise KeyError(f"unknown profile id: {profile_id!r}")
    guided_raw = gateway.complete(build_guided_prompt(doc, profile)).text
    baseline_raw = gateway.complete(build_baseline_prompt(doc)).text
    return build_comparison(score_output(guided_raw, doc), score_output(baseline_raw, doc))
