"""Deterministic generators for property tests.

random_report produces structurally valid reports in canonical form
(single-line texts, no markup collisions) so render → parse round trips
can be checked over many random instances.
"""

from __future__ import annotations

import random

from .model import (
    Contribution,
    CriticalQA,
    EvidenceRef,
    InsightReport,
    NavTip,
    PrioritySignal,
    SectionInsight,
    SectionKind,
    SignalKind,
    SignalledBullet,
)

_WORDS = (
    "attention model training data results encoder decoder layer sequence"
    " gradient benchmark ablation baseline parameter token scaling analysis"
    " throughput evaluation architecture loss metric sample figure dataset"
).split()


def _text(rng: random.Random, min_words: int = 1, max_words: int = 8) -> str:
    return " ".join(rng.choice(_WORDS) for _ in range(rng.randint(min_words, max_words)))


def _signals(rng: random.Random) -> list[PrioritySignal]:
    kinds = rng.sample(list(SignalKind), k=rng.randint(0, 2))
    return [PrioritySignal.of(k) for k in kinds]


def _bullets(rng: random.Random, max_n: int = 4) -> list[SignalledBullet]:
    return [
        SignalledBullet(text=_text(rng), signals=_signals(rng))
        for _ in range(rng.randint(0, max_n))
    ]


def random_report(rng: random.Random) -> InsightReport:
    """A structurally valid report with at least one sectional analysis."""
    kinds = [k for k in SectionKind if rng.random() < 0.6]
    if not kinds:
        kinds = [SectionKind.abstract_intro]
    sectional = [SectionInsight(section_kind=k, bullets=_bullets(rng)) for k in kinds]

    contributions = [
        Contribution(title=_text(rng, 1, 3), detail=_text(rng), signals=_signals(rng))
        for _ in range(rng.randint(0, 3))
    ]
    limitations = _bullets(rng, 3)
    questions = [
        CriticalQA(question=_text(rng, 1, 6) + "?", answer=_text(rng))
        for _ in range(rng.randint(0, 3))
    ]
    evidence = [
        EvidenceRef(
            label=f"{rng.choice(['Table', 'Figure', 'Section'])} {rng.randint(1, 9)}",
            rationale=_text(rng),
            grounded=rng.choice([None, True, False]),
        )
        for _ in range(rng.randint(0, 3))
    ]
    tips = [
        NavTip(
            goal=_text(rng, 1, 4),
            path=[_text(rng, 1, 3) for _ in range(rng.randint(1, 4))],
        )
        for _ in range(rng.randint(0, 3))
    ]
    return InsightReport(
        sectional=sectional,
        key_contributions=contributions,
        limitations=limitations,
        critical_questions=questions,
        evidence_refs=evidence,
        navigation_tips=tips,
        raw_model_text="",
    )
