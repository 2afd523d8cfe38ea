import { describe, expect, it } from "vitest";

import { renderInsights, renderRawFallback } from "../src/insights";
import type { InsightReport } from "../src/types";

function emptyReport(): InsightReport {
  return {
    sectional: [],
    key_contributions: [],
    limitations: [],
    critical_questions: [],
    evidence_refs: [],
    navigation_tips: [],
    raw_model_text: "",
  };
}

describe("renderInsights", () => {
  it("renders sections in canonical order with signal badges", () => {
    const report = emptyReport();
    report.sectional = [
      {
        section_kind: "methods",
        bullets: [
          {
            text: "attention replaces recurrence",
            signals: [{ kind: "innovation", token: "[INNOVATION]" }],
          },
        ],
      },
    ];
    report.limitations = [
      {
        text: "quadratic cost",
        signals: [{ kind: "limitation", token: "[LIMITATION]" }],
      },
    ];
    const html = renderInsights(report);
    expect(html).toContain("<h2>Methods</h2>");
    expect(html).toContain("signal-innovation");
    expect(html.indexOf("Methods")).toBeLessThan(html.indexOf("Limitations"));
    expect(html).toContain("signal-limitation");
  });

  it("flags ungrounded evidence refs with a warning marker", () => {
    const report = emptyReport();
    report.evidence_refs = [
      { label: "Table 2", rationale: "key comparison", grounded: true },
      { label: "Table 99", rationale: "imaginary", grounded: false },
    ];
    const html = renderInsights(report);
    expect(html).toContain("Table 2");
    expect(html.match(/ungrounded-warning/g)?.length).toBe(1);
    expect(html).toContain("Table 99");
  });

  it("renders nav steps as page links when the index locates them", () => {
    const report = emptyReport();
    report.navigation_tips = [
      {
        goal: "For Technical Implementation",
        path: ["Section 3 (Model Architecture)", "Related Work"],
      },
    ];
    const html = renderInsights(report, [{ label: "Section 3", page_no: 2 }]);
    expect(html).toContain('data-page="2"');
    // unresolvable step stays plain
    expect(html).toContain('<span class="nav-step">Related Work</span>');
  });

  it("omits empty sections entirely", () => {
    const html = renderInsights(emptyReport());
    expect(html).toBe("");
  });

  it("escapes model-controlled text", () => {
    const report = emptyReport();
    report.critical_questions = [
      { question: "<script>alert(1)</script>?", answer: "no & never" },
    ];
    const html = renderInsights(report);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
    expect(html).toContain("no &amp; never");
  });
});

describe("renderRawFallback", () => {
  it("shows the notice and the escaped raw text", () => {
    const html = renderRawFallback("raw <b>prose</b>");
    expect(html).toContain("template");
    expect(html).toContain("raw &lt;b&gt;prose&lt;/b&gt;");
  });
});
