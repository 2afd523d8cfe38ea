// Maps navigation-tip steps onto PDF pages via the extraction's
// structure index. Steps like "Section 3 (Model Architecture)" match the
// indexed label "Section 3"; unmatched steps simply yield no jump target.

import type { StructureEntry } from "./types";

function normalize(text: string): string {
  return text.toLowerCase().replace(/\s+/g, " ").trim();
}

export function pageForStep(
  step: string,
  index: StructureEntry[],
): number | null {
  const normStep = normalize(step);
  let best: { label: string; page: number } | null = null;
  for (const entry of index) {
    const label = normalize(entry.label);
    if (normStep === label || normStep.startsWith(label) || normStep.includes(label)) {
      // prefer the longest matching label ("Section 3.1" over "Section 3")
      if (!best || label.length > best.label.length) {
        best = { label, page: entry.page_no };
      }
    }
  }
  return best ? best.page : null;
}
