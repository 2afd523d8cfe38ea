import pytest
from pydantic import ValidationError

from insightmap.model import (
    SIGNAL_TOKENS,
    DocumentSource,
    ExtractedDocument,
    PageText,
    PrioritySignal,
    SignalKind,
    SourceLabel,
    Timings,
    canonical_signal,
)


class TestSignals:
    def test_canonical_mapping(self):
        sig = canonical_signal("[LIMITATION]")
        assert sig is not None
        assert sig.kind is SignalKind.limitation

    def test_glyph_alias(self):
        sig = canonical_signal("💡")
        assert sig is not None
        assert sig.kind is SignalKind.innovation

    def test_unknown_token_is_no_match(self):
        assert canonical_signal("[UNKNOWN]") is None

    def test_bijection(self):
        for kind, token in SIGNAL_TOKENS.items():
            assert canonical_signal(token).kind is kind
        assert len(set(SIGNAL_TOKENS.values())) == 3

    def test_non_canonical_token_rejected(self):
        with pytest.raises(ValidationError):
            PrioritySignal(kind=SignalKind.innovation, token="[LIMITATION]")


class TestDocumentSource:
    def test_empty_upload_rejected(self):
        with pytest.raises(ValidationError):
            DocumentSource.from_bytes(b"")

    def test_relative_url_rejected(self):
        with pytest.raises(ValidationError):
            DocumentSource.from_url("ftp://example.com/x.pdf")

    def test_valid_sources(self):
        DocumentSource.from_bytes(b"%PDF-1.4")
        DocumentSource.from_url("https://example.com/x.pdf")
        DocumentSource.from_example("attention")


class TestExtractedDocument:
    def _pages(self):
        return [
            PageText(page_no=1, markdown="Intro text with Table 1 reference"),
            PageText(page_no=2, markdown="More text"),
        ]

    def test_pages_required(self):
        with pytest.raises(ValidationError):
            ExtractedDocument(doc_hash="ab", pages=[], structure_index=[], char_count=0)

    def test_page_order_enforced(self):
        pages = [PageText(page_no=2, markdown="b"), PageText(page_no=1, markdown="a")]
        with pytest.raises(ValidationError):
            ExtractedDocument(doc_hash="ab", pages=pages, structure_index=[], char_count=2)

    def test_label_must_occur_in_text(self):
        with pytest.raises(ValidationError):
            ExtractedDocument(
                doc_hash="ab",
                pages=self._pages(),
                structure_index=[SourceLabel(label="Table 99", page_no=1)],
                char_count=10,
            )

    def test_label_match_is_case_insensitive(self):
        doc = ExtractedDocument(
            doc_hash="ab",
            pages=self._pages(),
            structure_index=[SourceLabel(label="TABLE 1", page_no=1)],
            char_count=10,
        )
        assert doc.structure_index[0].label == "TABLE 1"


def test_timings_non_negative():
    with pytest.raises(ValidationError):
        Timings(ocr_ms=-1)
