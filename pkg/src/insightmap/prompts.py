"""Reading-profile registry and prompt assembly.

Profiles live in a YAML config (see data/prompts.yaml). The default
"empirical-study" profile must carry four structural components, audited
at load time:

  a. per-section extraction targets (core research problem, innovative
     approaches, key findings)
  b. critical evaluation: key contributions, the critical-question set,
     and the three priority-signal tokens
  c. non-linear navigation tips tailored to different user goals
  d. the exact output template whose headers the parser recognizes
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

import yaml
from pydantic import BaseModel, ConfigDict, model_validator

from .errors import (
    ConfigMalformed,
    MissingDefaultProfile,
    PromptMissingRequiredComponent,
)
from .model import (
    ExtractedDocument,
    ReadingProfile,
    SectionKind,
    SIGNAL_TOKENS,
    SignalKind,
)
from .parsing import HEADER_SYNONYMS, normalize_header

DEFAULT_PROFILE_ID = "empirical-study"
DEFAULT_TEMPERATURE = 0.2
DEFAULT_MAX_OUTPUT_TOKENS = 4096
# Head-of-document truncation bound; early sections carry the extraction
# targets, so the tail is dropped first.
DEFAULT_MAX_INPUT_CHARS = 300_000
TRUNCATION_NOTICE = "\n[NOTE: document text truncated to fit the input limit]"
PAGE_SEPARATOR = "--- page {n} ---"
BASELINE_INSTRUCTION = "Summarize the provided paper"

SECTIONAL_TARGETS = ("core research problem", "innovative approaches", "key findings")
REQUIRED_CRITICAL_QUESTION = "Are the conclusions supported by data?"
NAVIGATION_PHRASES = ("Non-Linear Navigation Tips", "tailored to different user goals")


class PromptPayload(BaseModel):
    model_config = ConfigDict(frozen=True)

    system_text: str
    user_text: str
    temperature: float = DEFAULT_TEMPERATURE
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS

    @model_validator(mode="after")
    def _check(self) -> "PromptPayload":
        if not 0 <= self.temperature <= 2:
            raise ValueError("temperature must be in [0, 2]")
        return self


def _prompt_template_headers(system_prompt: str) -> list[str]:
    """ATX headers appearing in the prompt's output template block."""
    return re.findall(r"^\s{0,3}#{1,6}\s+(.+?)\s*$", system_prompt, flags=re.MULTILINE)


def audit_profile(profile: ReadingProfile) -> list[tuple[str, str]]:
    """Return (component, detail) pairs for every missing §-component a–d."""
    missing: list[tuple[str, str]] = []
    # collapse whitespace so phrase checks survive config line wrapping
    prompt = " ".join(profile.system_prompt.split())

    absent = [t for t in SECTIONAL_TARGETS if t.lower() not in prompt.lower()]
    if absent:
        missing.append(("a", f"sectional targets absent: {absent}"))

    if "Key Contributions".lower() not in prompt.lower():
        missing.append(("b", "no key-contributions instruction"))
    elif REQUIRED_CRITICAL_QUESTION not in prompt:
        missing.append(("b", f"critical question {REQUIRED_CRITICAL_QUESTION!r} absent"))
    else:
        tokens_absent = [t for t in SIGNAL_TOKENS.values() if t not in prompt]
        if tokens_absent:
            missing.append(("b", f"signal tokens absent: {tokens_absent}"))

    phrases_absent = [p for p in NAVIGATION_PHRASES if p.lower() not in prompt.lower()]
    if phrases_absent:
        missing.append(("c", f"navigation phrases absent: {phrases_absent}"))

    headers = _prompt_template_headers(profile.system_prompt)
    recognized = [h for h in headers if normalize_header(h) in HEADER_SYNONYMS]
    if len(set(normalize_header(h) for h in recognized)) < 4:
        missing.append(("d", "output template does not name the parser's headers"))
    return missing


class ProfileRegistry:
    """Read-only profile store plus the glyph alias table from config."""

    def __init__(
        self,
        profiles: dict[str, ReadingProfile],
        signal_aliases: dict[str, SignalKind],
    ):
        self._profiles = profiles
        self.signal_aliases = signal_aliases

    def get(self, profile_id: str) -> ReadingProfile | None:
        return self._profiles.get(profile_id)

    def default(self) -> ReadingProfile:
        return self._profiles[DEFAULT_PROFILE_ID]

    def ids(self) -> list[str]:
        return sorted(self._profiles)

    def __iter__(self):
        return iter(self._profiles.values())


def load_profiles(config_doc: str) -> ProfileRegistry:
    """Parse the YAML profile config and audit the default profile."""
    try:
        doc = yaml.safe_load(config_doc)
    except yaml.YAMLError as exc:
        raise ConfigMalformed(f"invalid YAML: {exc}") from exc
    if not isinstance(doc, dict) or "profiles" not in doc:
        raise ConfigMalformed("config must be a mapping with a 'profiles' key")

    aliases: dict[str, SignalKind] = {}
    for glyph, token in (doc.get("signal_aliases") or {}).items():
        kind = next((k for k, t in SIGNAL_TOKENS.items() if t == token), None)
        if kind is None:
            raise ConfigMalformed(f"signal alias {glyph!r} maps to unknown token {token!r}")
        aliases[str(glyph)] = kind

    profiles: dict[str, ReadingProfile] = {}
    for entry in doc["profiles"]:
        try:
            profile = ReadingProfile(
                id=entry["id"],
                display_name=entry.get("display_name", entry["id"]),
                system_prompt=entry.get("system_prompt", ""),
                required_sections=[SectionKind(s) for s in entry.get("required_sections", [])],
                critical_question_set=entry.get("critical_questions", []),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigMalformed(f"bad profile entry: {exc}") from exc
        if profile.id in profiles:
            raise ConfigMalformed(f"duplicate profile id: {profile.id!r}")
        profiles[profile.id] = profile

    if DEFAULT_PROFILE_ID not in profiles:
        raise MissingDefaultProfile(f"config must define profile {DEFAULT_PROFILE_ID!r}")
    default = profiles[DEFAULT_PROFILE_ID]
    if not default.critical_question_set:
        raise ConfigMalformed("default profile must declare critical questions")
    missing = audit_profile(default)
    if missing:
        component, detail = missing[0]
        raise PromptMissingRequiredComponent(default.id, component, detail)
    return ProfileRegistry(profiles, aliases)


def default_config_path() -> Path:
    return Path(str(resources.files("insightmap") / "data" / "prompts.yaml"))


def load_default_profiles() -> ProfileRegistry:
    return load_profiles(default_config_path().read_text(encoding="utf-8"))


def _document_text(doc: ExtractedDocument) -> str:
    parts = []
    for page in doc.pages:
        parts.append(PAGE_SEPARATOR.format(n=page.page_no))
        parts.append(page.markdown)
    return "\n".join(parts)


def _truncate(text: str, max_input_chars: int) -> str:
    if len(text) <= max_input_chars:
        return text
    return text[:max_input_chars] + TRUNCATION_NOTICE


def build_guided_prompt(
    doc: ExtractedDocument,
    profile: ReadingProfile,
    *,
    max_input_chars: int = DEFAULT_MAX_INPUT_CHARS,
) -> PromptPayload:
    """Assemble the guided prompt: profile system prompt + page-separated text."""
    if not doc.pages:
        raise ValueError("document has no pages")
    return PromptPayload(
        system_text=profile.system_prompt,
        user_text=_truncate(_document_text(doc), max_input_chars),
    )


def build_baseline_prompt(
    doc: ExtractedDocument,
    *,
    max_input_chars: int = DEFAULT_MAX_INPUT_CHARS,
) -> PromptPayload:
    """Assemble the generic-summarizer baseline prompt (empty system text)."""
    if not doc.pages:
        raise ValueError("document has no pages")
    user_text = f"{BASELINE_INSTRUCTION}\n\n{_document_text(doc)}"
    return PromptPayload(system_text="", user_text=_truncate(user_text, max_input_chars))
