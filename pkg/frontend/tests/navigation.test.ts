import { describe, expect, it } from "vitest";

import { pageForStep } from "../src/navigation";
import type { StructureEntry } from "../src/types";

const INDEX: StructureEntry[] = [
  { label: "Section 1", page_no: 1 },
  { label: "Section 3", page_no: 2 },
  { label: "Section 3.1", page_no: 2 },
  { label: "Table 2", page_no: 3 },
];

describe("pageForStep", () => {
  it("matches a step with a parenthetical suffix", () => {
    expect(pageForStep("Section 3 (Model Architecture)", INDEX)).toBe(2);
  });

  it("matches exact labels case-insensitively", () => {
    expect(pageForStep("table 2", INDEX)).toBe(3);
  });

  it("prefers the longest matching label", () => {
    expect(pageForStep("Section 3.1 details", INDEX)).toBe(2);
  });

  it("returns null when nothing matches", () => {
    expect(pageForStep("Related Work", INDEX)).toBeNull();
    expect(pageForStep("Abstract", [])).toBeNull();
  });
});
