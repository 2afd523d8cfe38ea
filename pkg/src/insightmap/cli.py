"""Command-line front-end: headless analysis plus the comparative
evaluation harness.

Sources are given as "example:<id>", "url:<http...>", or a local PDF path.
--mock wires the recorded OCR fixtures and canned model outputs so every
command runs offline.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import ServiceConfig, build_pipeline
from .errors import InsightError
from .model import DocumentSource
from .render import render_report
from .prompts import DEFAULT_PROFILE_ID
from .scoring import compare, score_output


def _parse_source(arg: str) -> DocumentSource:
    if arg.startswith("example:"):
        return DocumentSource.from_example(arg.split(":", 1)[1])
    if arg.startswith(("http://", "https://")):
        return DocumentSource.from_url(arg)
    if arg.startswith("url:"):
        return DocumentSource.from_url(arg.split(":", 1)[1])
    path = Path(arg)
    if not path.exists():
        raise click.BadParameter(f"no such file: {arg}")
    return DocumentSource.from_bytes(path.read_bytes())


def _pipeline(mock: bool):
    return build_pipeline(ServiceConfig.from_env(mock=mock))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text)


@click.group()
def main() -> None:
    """Guided-reading analysis of scientific PDFs."""


@main.command()
@click.argument("source")
@click.option("--profile", default=DEFAULT_PROFILE_ID, show_default=True)
@click.option("--mock", is_flag=True, help="Use recorded fixture providers.")
@click.option("--refresh", is_flag=True, help="Bypass the analysis cache.")
@click.option("--out", default=None, help="Write output to a file instead of stdout.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report wire encoding.")
def analyze(source, profile, mock, refresh, out, as_json):
    """Run the full pipeline on SOURCE and print the insight map."""
    try:
        outcome = _pipeline(mock).analyze(
            _parse_source(source), profile, force_refresh=refresh
        )
    except InsightError as exc:
        raise click.ClickException(f"[stage {getattr(exc, 'stage', '?')}] {exc}")
    if as_json:
        _emit(outcome.report.model_dump_json(indent=2), out)
    else:
        _emit(render_report(outcome.report), out)
    if not outcome.validation.passed:
        click.echo(
            f"validation deficiencies: {', '.join(outcome.validation.deficiencies)}",
            err=True,
        )
    click.echo(
        f"doc {outcome.doc_hash[:12]} cache_hit={outcome.cache_hit} "
        f"grounding={outcome.grounding_ratio:.2f}",
        err=True,
    )


@main.command()
@click.argument("source")
@click.option("--mock", is_flag=True)
@click.option("--out", default=None)
def extract(source, mock, out):
    """OCR-only extraction: print the page-anchored Markdown."""
    try:
        doc = _pipeline(mock).extract(_parse_source(source))
    except InsightError as exc:
        raise click.ClickException(f"[stage {getattr(exc, 'stage', '?')}] {exc}")
    _emit(doc.concatenated_text(), out)
    labels = ", ".join(e.label for e in doc.structure_index)
    click.echo(f"doc {doc.doc_hash[:12]}; labels: {labels}", err=True)


@main.command(name="compare")
@click.argument("source")
@click.option("--profile", default=DEFAULT_PROFILE_ID, show_default=True)
@click.option("--mock", is_flag=True)
@click.option("--out", default=None)
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable rows.")
def compare_cmd(source, profile, mock, out, as_json):
    """Score guided vs baseline output on the same document and model."""
    pipeline = _pipeline(mock)
    try:
        doc = pipeline.extract(_parse_source(source))
        table = compare(doc, pipeline.registry, pipeline.gateway, profile)
    except InsightError as exc:
        raise click.ClickException(f"[stage {getattr(exc, 'stage', '?')}] {exc}")
    _emit(table.to_json() if as_json else table.to_markdown(), out)


@main.command()
@click.argument("raw_file", type=click.Path(exists=True, path_type=Path))
@click.option("--source", "doc_source", required=True, help="Document the output describes.")
@click.option("--mock", is_flag=True)
@click.option("--out", default=None)
def score(raw_file, doc_source, mock, out):
    """Score a saved model output along the seven comparison dimensions."""
    pipeline = _pipeline(mock)
    try:
        doc = pipeline.extract(_parse_source(doc_source))
    except InsightError as exc:
        raise click.ClickException(f"[stage {getattr(exc, 'stage', '?')}] {exc}")
    scores = score_output(raw_file.read_text(encoding="utf-8"), doc)
    lines = [
        f"{'PASS' if s.satisfied else 'FAIL'}  {s.dimension.value}: {s.evidence}"
        for s in scores
    ]
    satisfied = sum(s.satisfied for s in scores)
    lines.append(f"satisfied {satisfied}/7")
    _emit("\n".join(lines), out)


@main.group()
def profiles() -> None:
    """Reading-profile registry commands."""


@profiles.command(name="list")
@click.option("--mock", is_flag=True)
def profiles_list(mock):
    """List available reading profiles."""
    for profile in _pipeline(mock).registry:
        click.echo(f"{profile.id}\t{profile.display_name}")


@main.command()
@click.option("--mock", is_flag=True, help="Serve with fixture providers.")
@click.option("--listen", default=None, help="host:port to bind (overrides INSIGHT_LISTEN).")
def serve(mock, listen):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    cfg = ServiceConfig.from_env(mock=mock)
    if listen:
        cfg = cfg.model_copy(update={"listen_addr": listen})
    host, _, port = cfg.listen_addr.partition(":")
    uvicorn.run(create_app(cfg), host=host or "127.0.0.1", port=int(port or 8421))


if __name__ == "__main__":
    sys.exit(main())
