"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with its runtime. Run with `pytest tests/test_acceptance.py -s`.
"""

import json
import random
import threading
import time
from contextlib import contextmanager

import pytest
from fastapi.testclient import TestClient

from insightmap.cache import RecordCache
from insightmap.config import ServiceConfig, data_path
from insightmap.errors import ProviderUnavailable
from insightmap.extraction import ExampleRegistry, FixtureOcrProvider
from insightmap.gateway import HttpModelGateway, MockModelGateway, ModelConfig, ScriptedModelGateway
from insightmap.model import DocumentSource, InsightReport, reports_structurally_equal
from insightmap.parsing import parse_report
from insightmap.pipeline import AnalysisPipeline
from insightmap.prompts import audit_profile, load_default_profiles
from insightmap.render import render_report
from insightmap.scoring import Dimension, compare
from insightmap.service import create_app
from insightmap.testing import random_report

ATTENTION = {"example_id": "attention"}


@contextmanager
def criterion(name: str, budget_s: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL: {name} ({time.perf_counter() - start:.2f}s)")
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed < budget_s else "FAIL"
    print(f"{status}: {name} ({elapsed:.2f}s, budget {budget_s:.0f}s)")
    assert elapsed < budget_s, f"{name} exceeded {budget_s}s budget"


def make_pipeline(tmp_path, *, gateway=None, ocr_provider=None, max_concurrent=4):
    return AnalysisPipeline(
        registry=load_default_profiles(),
        ocr_provider=ocr_provider or FixtureOcrProvider(data_path("ocr_fixtures")),
        gateway=gateway or MockModelGateway.from_fixture_dir(data_path("fixtures")),
        cache=RecordCache(tmp_path / "cache"),
        examples=ExampleRegistry(data_path("examples")),
        max_concurrent=max_concurrent,
        ocr_backoff_base_s=0.0,
    )


def test_table_reproduction_on_fixtures(tmp_path):
    """Mock OCR + mock model: guided vs baseline scores 7/7 vs 1/7 exactly."""
    with criterion("comparison-table reproduction (7/7 vs 1/7)", budget_s=5):
        pipeline = make_pipeline(tmp_path)
        doc = pipeline.extract(DocumentSource.from_example("attention"))
        table = compare(doc, pipeline.registry, pipeline.gateway, "empirical-study")
        assert table.guided_satisfied == 7
        assert table.baseline_satisfied == 1
        assert {r.dimension for r in table.rows if r.baseline} == {Dimension.key_contribution}
        assert all(r.guided for r in table.rows)


def test_round_trip_property():
    """100 random valid reports: parse(render(r)) structurally equals r."""
    with criterion("render/parse round trip over 100 random reports", budget_s=10):
        rng = random.Random(101)
        for _ in range(100):
            report = random_report(rng)
            assert reports_structurally_equal(report, parse_report(render_report(report)))


def test_grounding_soundness(tmp_path):
    """grounded flags agree with an independent substring search."""
    with criterion("grounding soundness on fixture reports", budget_s=5):
        pipeline = make_pipeline(tmp_path)
        doc = pipeline.extract(DocumentSource.from_example("attention"))
        haystack = doc.concatenated_text().lower()

        guided = (data_path("fixtures") / "guided_attention.md").read_text(encoding="utf-8")
        extra = guided + "\n## Evidence References\n\n- **Table 99**: does not exist.\n"
        outcome_report = pipeline.analyze(
            DocumentSource.from_example("attention"), "empirical-study"
        ).report
        for report in (outcome_report, parse_fixture_grounded(pipeline, extra, doc)):
            assert report.evidence_refs
            for ref in report.evidence_refs:
                assert ref.grounded is not None
                assert ref.grounded == (ref.label.lower() in haystack)


def parse_fixture_grounded(pipeline, raw, doc):
    from insightmap.parsing import ground_report

    return ground_report(parse_report(raw, pipeline.registry.signal_aliases), doc)


def test_endpoint_contract(tmp_path, baseline_fixture_text):
    """/analyze caching and schema, /extract content, 422 on prose output."""
    with criterion("HTTP endpoint contract", budget_s=10):
        app = create_app(ServiceConfig(mock=True), pipeline=make_pipeline(tmp_path))
        client = TestClient(app)

        first = client.post("/analyze", json=ATTENTION)
        assert first.status_code == 200
        body = first.json()
        assert body["cache_hit"] is False
        InsightReport.model_validate(body["report"])  # schema-valid

        second = client.post("/analyze", json=ATTENTION).json()
        assert second["cache_hit"] is True

        def stable(b):
            return json.dumps(
                {k: v for k, v in b.items() if k not in ("cache_hit", "timings")},
                sort_keys=True,
            ).encode()

        assert stable(body) == stable(second)

        extracted = client.post("/extract", json=ATTENTION)
        assert extracted.status_code == 200
        assert "Table 2" in extracted.json()["markdown"]

        prose_app = create_app(
            ServiceConfig(mock=True),
            pipeline=make_pipeline(
                tmp_path / "prose", gateway=ScriptedModelGateway([baseline_fixture_text])
            ),
        )
        resp = TestClient(prose_app).post("/analyze", json=ATTENTION)
        assert resp.status_code == 422
        assert resp.json()["raw_model_text"] == baseline_fixture_text


def test_prompt_component_audit():
    """Shipped default profile passes all four structural prompt checks."""
    with criterion("default-profile prompt component audit", budget_s=1):
        registry = load_default_profiles()
        profile = registry.default()
        assert audit_profile(profile) == []
        flat = " ".join(profile.system_prompt.split())
        assert "core research problem" in flat
        assert "Are the conclusions supported by data?" in flat
        for token in ("[INNOVATION]", "[LIMITATION]", "[EVIDENCE]"):
            assert token in flat
        assert "Non-Linear Navigation Tips" in flat


def test_retry_and_concurrency_bounds(tmp_path, stub_server):
    """503-exhaustion gives stage-attributed 502 after max_retries+1 attempts;
    a 50-request burst never exceeds the in-flight bound."""
    with criterion("retry attribution and bounded concurrency", budget_s=30):
        # OCR provider forced down
        class DownProvider:
            calls = 0

            def extract_pages(self, pdf):
                type(self).calls += 1
                raise ProviderUnavailable("503")

        ocr_app = create_app(
            ServiceConfig(mock=True),
            pipeline=make_pipeline(tmp_path / "ocr", ocr_provider=DownProvider()),
        )
        resp = TestClient(ocr_app).post("/analyze", json=ATTENTION)
        assert resp.status_code == 502
        assert resp.json()["stage"] == "ocr"
        assert DownProvider.calls == 3  # default max_retries (2) + 1

        # model endpoint forced down
        base_url, handler = stub_server
        max_retries = 2
        handler.script.extend([(503, {})] * (max_retries + 1))
        gateway = HttpModelGateway(
            ModelConfig(
                endpoint_url=base_url,
                api_key="k",
                model_id="m",
                timeout_s=10,
                max_retries=max_retries,
                backoff_base_s=0.0,
            )
        )
        llm_app = create_app(
            ServiceConfig(mock=True),
            pipeline=make_pipeline(tmp_path / "llm", gateway=gateway),
        )
        resp = TestClient(llm_app).post("/analyze", json=ATTENTION)
        assert resp.status_code == 502
        assert resp.json()["stage"] == "llm"
        assert len(handler.requests_seen) == max_retries + 1

        # burst: in-flight analyses never exceed the bound
        pipeline = make_pipeline(tmp_path / "burst", max_concurrent=4)
        app = create_app(ServiceConfig(mock=True), pipeline=pipeline)
        client = TestClient(app)
        statuses = []
        lock = threading.Lock()

        def hit():
            code = client.post("/analyze?refresh=true", json=ATTENTION).status_code
            with lock:
                statuses.append(code)

        threads = [threading.Thread(target=hit) for _ in range(50)]
        for t in threads:
            t.start()
        for t in threads:
            t.join(timeout=60)
        assert statuses.count(200) == 50
        assert pipeline.guard.max_observed <= 4
