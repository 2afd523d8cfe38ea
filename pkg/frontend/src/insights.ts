// Renders an InsightReport to HTML for the insight pane. Pure string
// output so it can be unit-tested without a DOM. Navigation steps that
// resolve to a PDF page become buttons carrying a data-page attribute;
// the DOM layer wires the click to the PDF pane.

import { pageForStep } from "./navigation";
import type {
  InsightReport,
  PrioritySignal,
  SectionKind,
  SignalledBullet,
  StructureEntry,
} from "./types";

const SECTION_TITLES: Record<SectionKind, string> = {
  abstract_intro: "Abstract & Introduction",
  methods: "Methods",
  results: "Results",
  discussion: "Discussion",
};

const SIGNAL_GLYPHS: Record<string, string> = {
  innovation: "💡",
  limitation: "⚠️",
  high_impact_evidence: "📊",
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function badges(signals: PrioritySignal[]): string {
  return signals
    .map(
      (s) =>
        `<span class="signal-badge signal-${s.kind}" title="${escapeHtml(s.token)}">` +
        `${SIGNAL_GLYPHS[s.kind] ?? s.token}</span>`,
    )
    .join("");
}

function bulletItem(bullet: SignalledBullet): string {
  return `<li>${badges(bullet.signals)}${escapeHtml(bullet.text)}</li>`;
}

function section(title: string, body: string): string {
  return body ? `<section><h2>${escapeHtml(title)}</h2>${body}</section>` : "";
}

export function renderInsights(
  report: InsightReport,
  structureIndex: StructureEntry[] = [],
): string {
  const parts: string[] = [];

  for (const insight of report.sectional) {
    const items = insight.bullets.map(bulletItem).join("");
    parts.push(section(SECTION_TITLES[insight.section_kind], items ? `<ul>${items}</ul>` : ""));
  }

  const contributions = report.key_contributions
    .map(
      (c) =>
        `<li>${badges(c.signals)}<strong>${escapeHtml(c.title)}</strong>` +
        (c.detail ? `: ${escapeHtml(c.detail)}` : "") +
        `</li>`,
    )
    .join("");
  if (contributions) parts.push(section("Key Contributions", `<ul>${contributions}</ul>`));

  const limitations = report.limitations.map(bulletItem).join("");
  if (limitations) parts.push(section("Limitations", `<ul>${limitations}</ul>`));

  const questions = report.critical_questions
    .map(
      (qa) =>
        `<li><strong>${escapeHtml(qa.question)}</strong>` +
        (qa.answer ? ` ${escapeHtml(qa.answer)}` : "") +
        `</li>`,
    )
    .join("");
  if (questions) parts.push(section("Critical Questions", `<ul>${questions}</ul>`));

  const evidence = report.evidence_refs
    .map((ref) => {
      const warning =
        ref.grounded === false
          ? `<span class="ungrounded-warning" title="label not found in the extracted text">⚠ unverified</span>`
          : "";
      return (
        `<li class="${ref.grounded === false ? "ungrounded" : ""}">` +
        `<strong>${escapeHtml(ref.label)}</strong>` +
        (ref.rationale ? `: ${escapeHtml(ref.rationale)}` : "") +
        ` ${warning}</li>`
      );
    })
    .join("");
  if (evidence) parts.push(section("Evidence References", `<ul>${evidence}</ul>`));

  const tips = report.navigation_tips
    .map((tip) => {
      const steps = tip.path
        .map((step) => {
          const page = pageForStep(step, structureIndex);
          return page === null
            ? `<span class="nav-step">${escapeHtml(step)}</span>`
            : `<button class="nav-step nav-link" data-page="${page}">${escapeHtml(step)}</button>`;
        })
        .join(`<span class="nav-arrow">→</span>`);
      return `<li><em>${escapeHtml(tip.goal)}</em>: ${steps}</li>`;
    })
    .join("");
  if (tips) parts.push(section("Navigation Tips", `<ul class="nav-tips">${tips}</ul>`));

  return parts.join("");
}

export function renderRawFallback(rawText: string): string {
  return (
    `<div class="raw-fallback">` +
    `<p class="notice">The model did not follow the analysis template; showing its raw output.</p>` +
    `<pre>${escapeHtml(rawText)}</pre></div>`
  );
}
