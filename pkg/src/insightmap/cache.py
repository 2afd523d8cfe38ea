"""Durable analysis cache: one JSON file per record, keyed by
(doc_hash, profile_id, model_id). Writes are atomic (temp + rename)."""

from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path

from .model import AnalysisRecord


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


class RecordCache:
    def __init__(self, cache_dir: Path | str):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, doc_hash: str, profile_id: str, model_id: str) -> Path:
        return self.cache_dir / doc_hash / f"{_safe(profile_id)}__{_safe(model_id)}.json"

    def get(self, doc_hash: str, profile_id: str, model_id: str) -> AnalysisRecord | None:
        path = self._path(doc_hash, profile_id, model_id)
        if not path.exists():
            return None
        return AnalysisRecord.model_validate_json(path.read_text(encoding="utf-8"))

    def put(self, record: AnalysisRecord) -> Path:
        path = self._path(record.doc_hash, record.profile_id, record.model_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(record.model_dump_json())
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        return path
