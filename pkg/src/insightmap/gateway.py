"""Chat-completion client for any OpenAI-API-compatible endpoint.

Includes retry with backoff + jitter on 429/5xx, stripping of a leading
delimited reasoning block (reasoning models prepend their trace), and
deterministic mock gateways for tests and offline runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx
from pydantic import BaseModel, ConfigDict, model_validator

from .errors import EmptyCompletion, ModelRejected, ModelUnavailable
from .prompts import PromptPayload

DEFAULT_REASONING_DELIMITERS = ("<think>", "</think>")


class ModelConfig(BaseModel):
    model_config = ConfigDict(frozen=True, protected_namespaces=())

    endpoint_url: str
    api_key: str
    model_id: str
    timeout_s: int = 300
    max_retries: int = 2
    backoff_base_s: float = 0.5
    reasoning_delimiters: tuple[str, str] = DEFAULT_REASONING_DELIMITERS

    @model_validator(mode="after")
    def _check(self) -> "ModelConfig":
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        return self


@dataclass(frozen=True)
class CompletionResult:
    text: str
    latency_ms: int
    attempts: int

    @property
    def retries(self) -> int:
        return self.attempts - 1


class ModelGateway(Protocol):
    model_id: str

    def complete(self, payload: PromptPayload) -> CompletionResult: ...


def strip_reasoning_block(text: str, delimiters: tuple[str, str]) -> str:
    """Drop a leading delimited reasoning trace, if present."""
    open_tag, close_tag = delimiters
    stripped = text.lstrip()
    if stripped.startswith(open_tag):
        end = stripped.find(close_tag)
        if end != -1:
            return stripped[end + len(close_tag):].lstrip()
    return text


def _messages(payload: PromptPayload) -> list[dict[str, str]]:
    messages = []
    if payload.system_text:
        messages.append({"role": "system", "content": payload.system_text})
    messages.append({"role": "user", "content": payload.user_text})
    return messages


class HttpModelGateway:
    """Live client for {endpoint}/chat/completions with bearer auth."""

    def __init__(self, cfg: ModelConfig, rng: random.Random | None = None):
        self.cfg = cfg
        self.model_id = cfg.model_id
        self._rng = rng or random.Random()

    def complete(self, payload: PromptPayload) -> CompletionResult:
        url = self.cfg.endpoint_url.rstrip("/") + "/chat/completions"
        body = {
            "model": self.cfg.model_id,
            "messages": _messages(payload),
            "temperature": payload.temperature,
            "max_tokens": payload.max_output_tokens,
        }
        headers = {"Authorization": f"Bearer {self.cfg.api_key}"}

        start = time.perf_counter()
        attempts = 0
        last_error = "no attempt made"
        while attempts <= self.cfg.max_retries:
            attempts += 1
            try:
                resp = httpx.post(url, json=body, headers=headers, timeout=self.cfg.timeout_s)
            except httpx.HTTPError as exc:
                last_error = str(exc)
            else:
                if resp.status_code < 400:
                    return self._finish(resp, start, attempts)
                if resp.status_code != 429 and resp.status_code < 500:
                    raise ModelRejected(
                        f"completion endpoint returned {resp.status_code}",
                        status_code=resp.status_code,
                    )
                last_error = f"HTTP {resp.status_code}"
            if attempts <= self.cfg.max_retries:
                delay = self.cfg.backoff_base_s * (2 ** (attempts - 1))
                time.sleep(delay * (1 + self._rng.random()))
        raise ModelUnavailable(f"completion failed after {attempts} attempts: {last_error}")

    def _finish(self, resp: httpx.Response, start: float, attempts: int) -> CompletionResult:
        try:
            content = resp.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise ModelRejected(f"malformed completion response: {exc}") from exc
        text = strip_reasoning_block(content or "", self.cfg.reasoning_delimiters)
        if not text.strip():
            raise EmptyCompletion("completion content is blank")
        latency_ms = int((time.perf_counter() - start) * 1000)
        return CompletionResult(text=text, latency_ms=latency_ms, attempts=attempts)


class MockModelGateway:
    """Deterministic gateway returning canned text.

    Guided prompts (non-empty system text) map to guided_text, baseline
    prompts to baseline_text. Bit-deterministic given its fixture mapping.
    """

    def __init__(self, guided_text: str, baseline_text: str, model_id: str = "mock-model"):
        self.guided_text = guided_text
        self.baseline_text = baseline_text
        self.model_id = model_id

    @classmethod
    def from_fixture_dir(cls, fixture_dir: Path | str, model_id: str = "mock-model"):
        d = Path(fixture_dir)
        return cls(
            guided_text=(d / "guided_attention.md").read_text(encoding="utf-8"),
            baseline_text=(d / "baseline_attention.md").read_text(encoding="utf-8"),
            model_id=model_id,
        )

    def complete(self, payload: PromptPayload) -> CompletionResult:
        text = self.guided_text if payload.system_text else self.baseline_text
        if not text.strip():
            raise EmptyCompletion("mock completion content is blank")
        return CompletionResult(text=text, latency_ms=0, attempts=1)


class ScriptedModelGateway:
    """Raises or returns per a fixed script; for forced error paths in tests."""

    def __init__(self, script: list[str | Exception], model_id: str = "scripted-model"):
        self.script = list(script)
        self.model_id = model_id
        self.calls = 0

    def complete(self, payload: PromptPayload) -> CompletionResult:
        self.calls += 1
        step = self.script.pop(0) if self.script else ModelUnavailable("script exhausted")
        if isinstance(step, Exception):
            raise step
        if not step.strip():
            raise EmptyCompletion("scripted completion content is blank")
        return CompletionResult(text=step, latency_ms=0, attempts=1)
