"""Service configuration and pipeline wiring.

Environment variables:
  INSIGHT_OCR_URL / INSIGHT_OCR_KEY       OCR provider endpoint + key
  INSIGHT_MODEL_URL / INSIGHT_MODEL_KEY   completion endpoint + key
  INSIGHT_MODEL_ID                        model identifier
  INSIGHT_PROMPTS                         prompt config path
  INSIGHT_CACHE                           cache directory
  INSIGHT_LISTEN                          host:port to bind
"""

from __future__ import annotations

import os
import tempfile
from importlib import resources
from pathlib import Path

from pydantic import BaseModel, ConfigDict

from .cache import RecordCache
from .extraction import (
    ExampleRegistry,
    FixtureOcrProvider,
    HttpOcrProvider,
    OcrProviderConfig,
)
from .gateway import HttpModelGateway, MockModelGateway, ModelConfig
from .pipeline import DEFAULT_MAX_CONCURRENT, AnalysisPipeline
from .prompts import load_profiles

DEFAULT_LISTEN = "127.0.0.1:8421"


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("insightmap") / "data")).joinpath(*parts)


class ServiceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    listen_addr: str = DEFAULT_LISTEN
    ocr: OcrProviderConfig | None = None
    model: ModelConfig | None = None
    prompt_config_path: Path = data_path("prompts.yaml")
    cache_dir: Path | None = None
    example_dir: Path = data_path("examples")
    max_concurrent_analyses: int = DEFAULT_MAX_CONCURRENT
    mock: bool = False

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None, *, mock: bool = False) -> "ServiceConfig":
        env = dict(os.environ if env is None else env)
        ocr = None
        if env.get("INSIGHT_OCR_URL"):
            ocr = OcrProviderConfig(
                endpoint_url=env["INSIGHT_OCR_URL"],
                api_key=env.get("INSIGHT_OCR_KEY", ""),
            )
        model = None
        if env.get("INSIGHT_MODEL_URL"):
            model = ModelConfig(
                endpoint_url=env["INSIGHT_MODEL_URL"],
                api_key=env.get("INSIGHT_MODEL_KEY", ""),
                model_id=env.get("INSIGHT_MODEL_ID", "default-model"),
            )
        return cls(
            listen_addr=env.get("INSIGHT_LISTEN", DEFAULT_LISTEN),
            ocr=ocr,
            model=model,
            prompt_config_path=Path(env["INSIGHT_PROMPTS"])
            if env.get("INSIGHT_PROMPTS")
            else data_path("prompts.yaml"),
            cache_dir=Path(env["INSIGHT_CACHE"]) if env.get("INSIGHT_CACHE") else None,
            mock=mock,
        )


def build_pipeline(cfg: ServiceConfig) -> AnalysisPipeline:
    """Wire a pipeline from config. Mock mode (or missing provider config)
    uses the recorded OCR fixtures and the bundled model outputs."""
    if not cfg.prompt_config_path.exists():
        raise FileNotFoundError(f"prompt config not found: {cfg.prompt_config_path}")
    registry = load_profiles(cfg.prompt_config_path.read_text(encoding="utf-8"))
    examples = ExampleRegistry(cfg.example_dir)
    cache_dir = cfg.cache_dir or Path(tempfile.mkdtemp(prefix="insightmap-cache-"))
    cache = RecordCache(cache_dir)

    if cfg.mock or cfg.ocr is None:
        ocr_provider = FixtureOcrProvider(data_path("ocr_fixtures"))
        ocr_backoff = 0.0
        max_pdf_bytes = None
    else:
        ocr_provider = HttpOcrProvider(cfg.ocr)
        ocr_backoff = cfg.ocr.backoff_base_s
        max_pdf_bytes = cfg.ocr.max_pdf_bytes

    if cfg.mock or cfg.model is None:
        gateway = MockModelGateway.from_fixture_dir(data_path("fixtures"))
    else:
        gateway = HttpModelGateway(cfg.model)

    return AnalysisPipeline(
        registry=registry,
        ocr_provider=ocr_provider,
        gateway=gateway,
        cache=cache,
        examples=examples,
        max_pdf_bytes=max_pdf_bytes,
        max_concurrent=cfg.max_concurrent_analyses,
        ocr_max_attempts=(cfg.ocr.max_retries + 1) if cfg.ocr else 3,
        ocr_backoff_base_s=ocr_backoff,
    )
