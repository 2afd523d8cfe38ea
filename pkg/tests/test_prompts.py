import pytest
import yaml

from insightmap.errors import (
    ConfigMalformed,
    MissingDefaultProfile,
    PromptMissingRequiredComponent,
)
from insightmap.extraction import extract_text
from insightmap.model import SignalKind
from insightmap.parsing import HEADER_SYNONYMS, normalize_header
from insightmap.prompts import (
    BASELINE_INSTRUCTION,
    DEFAULT_PROFILE_ID,
    REQUIRED_CRITICAL_QUESTION,
    TRUNCATION_NOTICE,
    audit_profile,
    build_baseline_prompt,
    build_guided_prompt,
    default_config_path,
    load_default_profiles,
    load_profiles,
    _prompt_template_headers,
)

FAKE_PDF = b"%PDF-1.4 prompt test"


def make_doc(pages):
    class P:
        def __init__(self, pages):
            self.pages = pages

        def extract_pages(self, pdf):
            return self.pages

    return extract_text(FAKE_PDF, P(pages))


@pytest.fixture(scope="module")
def registry():
    return load_default_profiles()


class TestLoadProfiles:
    def test_default_profile_present_and_audited(self, registry):
        profile = registry.get(DEFAULT_PROFILE_ID)
        assert profile is not None
        assert audit_profile(profile) == []

    def test_component_contents(self, registry):
        prompt = " ".join(registry.default().system_prompt.split())
        for phrase in ("core research problem", "innovative approaches", "key findings"):
            assert phrase in prompt
        assert REQUIRED_CRITICAL_QUESTION in prompt
        for token in ("[INNOVATION]", "[LIMITATION]", "[EVIDENCE]"):
            assert token in prompt
        assert "Non-Linear Navigation Tips" in prompt
        assert "tailored to different user goals" in prompt

    def test_empty_system_prompt_rejected(self):
        doc = yaml.safe_load(default_config_path().read_text())
        doc["profiles"][0]["system_prompt"] = "x"  # degenerate, fails the audit
        with pytest.raises(PromptMissingRequiredComponent) as excinfo:
            load_profiles(yaml.dump(doc))
        assert excinfo.value.component in "abcd"

    def test_duplicate_ids_rejected(self):
        doc = yaml.safe_load(default_config_path().read_text())
        doc["profiles"].append(dict(doc["profiles"][0]))
        with pytest.raises(ConfigMalformed, match="duplicate"):
            load_profiles(yaml.dump(doc))

    def test_missing_default_profile(self):
        doc = yaml.safe_load(default_config_path().read_text())
        doc["profiles"][0]["id"] = "other"
        with pytest.raises(MissingDefaultProfile):
            load_profiles(yaml.dump(doc))

    def test_malformed_yaml(self):
        with pytest.raises(ConfigMalformed):
            load_profiles(":\n  - {")

    def test_not_a_mapping(self):
        with pytest.raises(ConfigMalformed):
            load_profiles("- just\n- a list\n")

    def test_signal_aliases_loaded(self, registry):
        assert registry.signal_aliases["💡"] is SignalKind.innovation
        assert registry.signal_aliases["⚠️"] is SignalKind.limitation
        assert registry.signal_aliases["📊"] is SignalKind.high_impact_evidence

    def test_bad_alias_target(self):
        doc = yaml.safe_load(default_config_path().read_text())
        doc["signal_aliases"]["✨"] = "[NOT-A-TOKEN]"
        with pytest.raises(ConfigMalformed):
            load_profiles(yaml.dump(doc))


class TestTemplateParserCovalidation:
    def test_template_headers_recognized_by_parser(self, registry):
        headers = _prompt_template_headers(registry.default().system_prompt)
        assert headers, "default prompt must carry an output template"
        for header in headers:
            assert normalize_header(header) in HEADER_SYNONYMS, header

    def test_required_sections_covered_by_template(self, registry):
        profile = registry.default()
        mapped = {
            HEADER_SYNONYMS[normalize_header(h)]
            for h in _prompt_template_headers(profile.system_prompt)
        }
        for kind in profile.required_sections:
            assert kind in mapped


class TestPromptBuilders:
    def test_page_separators(self, registry):
        doc = make_doc(["first page", "second page"])
        payload = build_guided_prompt(doc, registry.default())
        assert "--- page 1 ---" in payload.user_text
        assert "--- page 2 ---" in payload.user_text
        assert payload.system_text == registry.default().system_prompt

    def test_truncation_arithmetic(self, registry):
        doc = make_doc(["x" * 5000])
        payload = build_guided_prompt(doc, registry.default(), max_input_chars=1000)
        assert payload.user_text.endswith(TRUNCATION_NOTICE)
        assert len(payload.user_text) <= 1000 + len(TRUNCATION_NOTICE)

    def test_baseline_prefix_and_empty_system(self, registry):
        doc = make_doc(["some text"])
        payload = build_baseline_prompt(doc)
        assert payload.user_text.startswith(BASELINE_INSTRUCTION)
        assert payload.system_text == ""

    def test_default_prompt_names_critical_question(self, registry):
        doc = make_doc(["some text"])
        payload = build_guided_prompt(doc, registry.default())
        assert REQUIRED_CRITICAL_QUESTION in " ".join(payload.system_text.split())

    def test_truncation_rule_shared(self, registry):
        doc = make_doc(["y" * 5000])
        guided = build_guided_prompt(doc, registry.default(), max_input_chars=800)
        baseline = build_baseline_prompt(doc, max_input_chars=800)
        assert guided.user_text.endswith(TRUNCATION_NOTICE)
        assert baseline.user_text.endswith(TRUNCATION_NOTICE)
        assert len(guided.user_text) == len(baseline.user_text) == 800 + len(TRUNCATION_NOTICE)

    def test_deterministic(self, registry):
        doc = make_doc(["alpha", "beta"])
        a = build_guided_prompt(doc, registry.default())
        b = build_guided_prompt(doc, registry.default())
        assert a == b
