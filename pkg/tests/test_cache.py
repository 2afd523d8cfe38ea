from datetime import datetime, timezone

from insightmap.model import AnalysisRecord, Timings
from insightmap.parsing import parse_report


def make_record(guided_fixture_text, **overrides):
    fields = dict(
        doc_hash="ab" * 32,
        profile_id="empirical-study",
        model_id="mock/model:v1",
        report=parse_report(guided_fixture_text),
        created_at=datetime(2026, 8, 23, tzinfo=timezone.utc),
        timings=Timings(ocr_ms=1, llm_ms=2, parse_ms=3),
    )
    fields.update(overrides)
    return AnalysisRecord(**fields)


class TestRecordCache:
    def test_miss_returns_none(self, record_cache):
        assert record_cache.get("00" * 32, "p", "m") is None

    def test_round_trip(self, record_cache, guided_fixture_text):
        record = make_record(guided_fixture_text)
        record_cache.put(record)
        loaded = record_cache.get(record.doc_hash, record.profile_id, record.model_id)
        assert loaded == record

    def test_stored_report_serialization_is_stable(self, record_cache, guided_fixture_text):
        record = make_record(guided_fixture_text)
        record_cache.put(record)
        a = record_cache.get(record.doc_hash, record.profile_id, record.model_id)
        b = record_cache.get(record.doc_hash, record.profile_id, record.model_id)
        assert a.report.model_dump_json() == b.report.model_dump_json()

    def test_keys_are_independent(self, record_cache, guided_fixture_text):
        record_cache.put(make_record(guided_fixture_text))
        assert record_cache.get("ab" * 32, "other-profile", "mock/model:v1") is None
        assert record_cache.get("ab" * 32, "empirical-study", "other") is None

    def test_model_id_sanitized_for_filesystem(self, record_cache, guided_fixture_text):
        record = make_record(guided_fixture_text, model_id="org/model:tag v2")
        path = record_cache.put(record)
        assert path.exists()
        assert "/" not in path.name
        loaded = record_cache.get(record.doc_hash, record.profile_id, record.model_id)
        assert loaded == record

    def test_no_temp_files_left_behind(self, record_cache, guided_fixture_text):
        record = make_record(guided_fixture_text)
        record_cache.put(record)
        leftovers = list(record_cache.cache_dir.rglob("*.tmp"))
        assert leftovers == []
