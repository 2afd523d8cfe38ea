"""Regenerate the bundled example PDF and its recorded OCR response.

The PDF is built deterministically (reportlab invariant mode) so the
recorded OCR fixture, which is keyed by the PDF's content hash, stays
valid across regenerations. Run from the repo root:

    python scripts/generate_bundled_example.py
"""

import hashlib
import json
from pathlib import Path

from reportlab.lib.pagesizes import A4
from reportlab.lib.units import cm
from reportlab.pdfgen import canvas

DATA = Path(__file__).resolve().parents[1] / "src" / "insightmap" / "data"

PAGES = [
    (
        "Attention Is All You Need",
        [
            "Abstract",
            "The dominant sequence transduction models are based on complex",
            "recurrent or convolutional neural networks that include an encoder",
            "and a decoder. We propose the Transformer, a new simple network",
            "architecture based solely on attention mechanisms, dispensing with",
            "recurrence and convolutions entirely.",
            "",
            "Section 1 Introduction",
            "Recurrent neural networks process symbols sequentially, which",
            "precludes parallelization within training examples. Attention",
            "mechanisms allow modeling of dependencies without regard to their",
            "distance in the input or output sequences. The core research",
            "problem is removing this sequential bottleneck.",
            "",
            "Section 2 Background",
            "Self-attention relates different positions of a single sequence",
            "in order to compute a representation of the sequence.",
        ],
    ),
    (
        "Model Architecture",
        [
            "Section 3 Model Architecture",
            "The Transformer follows an encoder-decoder structure using stacked",
            "self-attention and point-wise, fully connected layers. Figure 1",
            "shows the full model. Multi-head attention allows the model to",
            "jointly attend to information from different representation",
            "subspaces at different positions.",
            "",
            "Section 4 Why Self-Attention",
            "A self-attention layer connects all positions with a constant",
            "number of sequentially executed operations, at O(n^2) cost in the",
            "sequence length.",
            "",
            "Section 5 Training",
            "We trained on the WMT 2014 English-German dataset using the Adam",
            "optimizer with a custom learning-rate schedule, residual dropout",
            "and label smoothing.",
        ],
    ),
    (
        "Results",
        [
            "Section 6 Results",
            "On WMT 2014 English-to-German translation the big Transformer",
            "achieves 28.4 BLEU, and 41.8 BLEU on English-to-French. Table 2",
            "compares translation quality and training cost against previous",
            "state-of-the-art models. Table 3 lists architecture variations.",
            "",
            "Section 7 Conclusion",
            "The Transformer generalizes well to English constituency parsing.",
            "Appendix A visualizes attention distributions.",
        ],
    ),
]


def build_pdf(path: Path) -> bytes:
    c = canvas.Canvas(str(path), pagesize=A4, invariant=1)
    for title, lines in PAGES:
        c.setFont("Helvetica-Bold", 14)
        c.drawString(2 * cm, 27.5 * cm, title)
        c.setFont("Helvetica", 10)
        y = 26.3 * cm
        for line in lines:
            c.drawString(2 * cm, y, line)
            y -= 0.55 * cm
        c.showPage()
    c.save()
    return path.read_bytes()


def build_ocr_response() -> str:
    pages = []
    for index, (title, lines) in enumerate(PAGES):
        md_lines = [f"# {title}", ""]
        for line in lines:
            if line.startswith(("Abstract", "Section ", "Appendix ")) and len(line) < 40:
                md_lines.extend(["", f"## {line}", ""])
            else:
                md_lines.append(line)
        pages.append({"index": index, "markdown": "\n".join(md_lines)})
    return json.dumps({"pages": pages}, indent=2)


def main() -> None:
    example_dir = DATA / "examples"
    fixture_dir = DATA / "ocr_fixtures"
    example_dir.mkdir(parents=True, exist_ok=True)
    fixture_dir.mkdir(parents=True, exist_ok=True)

    pdf_bytes = build_pdf(example_dir / "attention.pdf")
    digest = hashlib.sha256(pdf_bytes).hexdigest()

    (fixture_dir / f"{digest}.json").write_text(build_ocr_response(), encoding="utf-8")

    manifest = [{"id": "attention", "title": "Attention Is All You Need", "pdf": "attention.pdf"}]
    (example_dir / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    print(f"wrote attention.pdf ({len(pdf_bytes)} bytes, sha256 {digest})")


if __name__ == "__main__":
    main()
