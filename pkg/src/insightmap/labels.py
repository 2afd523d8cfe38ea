"""Label grammar for in-paper artifact anchors.

Recognizes "Table N", "Figure N", "Section N(.N)*" and "Appendix L"
(case-insensitive). Shared by the structural indexer and the evidence-ref
parser so both sides agree on what counts as an anchor.
"""

from __future__ import annotations

import re

LABEL_RE = re.compile(
    r"\b(?:(?:Table|Figure|Section)\s+\d+(?:\.\d+)*|Appendix\s+[A-Z])\b",
    re.IGNORECASE,
)


def find_labels(text: str) -> list[str]:
    """All label occurrences in document order (not deduplicated)."""
    return LABEL_RE.findall(text)


def leading_label(text: str) -> str | None:
    """The label at the very start of text, if any."""
    m = LABEL_RE.match(text)
    return m.group(0) if m else None
