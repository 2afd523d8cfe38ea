import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from insightmap.cache import RecordCache
from insightmap.config import ServiceConfig, build_pipeline, data_path
from insightmap.model import DocumentSource
from insightmap.pipeline import AnalysisPipeline


@pytest.fixture()
def mock_pipeline(tmp_path) -> AnalysisPipeline:
    cfg = ServiceConfig(mock=True, cache_dir=tmp_path / "cache")
    return build_pipeline(cfg)


@pytest.fixture(scope="session")
def guided_fixture_text() -> str:
    return (data_path("fixtures") / "guided_attention.md").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def baseline_fixture_text() -> str:
    return (data_path("fixtures") / "baseline_attention.md").read_text(encoding="utf-8")


@pytest.fixture()
def attention_doc(mock_pipeline):
    return mock_pipeline.extract(DocumentSource.from_example("attention"))


class StubHandler(BaseHTTPRequestHandler):
    """Replays a scripted list of (status, body) responses in order."""

    script: list[tuple[int, dict]] = []
    requests_seen: list[str] = []

    def do_POST(self):
        self.do_GET()

    def do_GET(self):
        type(self).requests_seen.append(self.path)
        status, body = (
            self.script.pop(0) if self.script else (500, {"error": "script exhausted"})
        )
        payload = json.dumps(body).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture()
def stub_server():
    """Yields (base_url, handler_class); enqueue responses on handler.script."""
    handler = type("Handler", (StubHandler,), {"script": [], "requests_seen": []})
    server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}", handler
    server.shutdown()
    thread.join(timeout=5)


@pytest.fixture()
def record_cache(tmp_path) -> RecordCache:
    return RecordCache(tmp_path / "cache")
