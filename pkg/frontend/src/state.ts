// View state for the dual-pane reader. Pure logic, no DOM: the store
// enforces the pane invariants and notifies subscribers on change.
//
// Invariants:
//   - a report is only present when a document is loaded
//   - busyStage and report are never both set
//   - layout toggles never clear the loaded document, report, or positions

import type { InsightReport } from "./types";

export type Layout = "dual" | "pdf-max" | "insights-max";
export type BusyStage = "uploading" | "extracting" | "analyzing" | null;

export interface LoadedDoc {
  docHash: string | null;
  pdfUrl: string;
}

export interface ViewState {
  layout: Layout;
  currentDoc: LoadedDoc | null;
  report: InsightReport | null;
  busyStage: BusyStage;
  error: string | null;
  rawFallback: string | null;
  pdfPage: number;
  insightScroll: number;
}

export function initialState(): ViewState {
  return {
    layout: "dual",
    currentDoc: null,
    report: null,
    busyStage: null,
    error: null,
    rawFallback: null,
    pdfPage: 1,
    insightScroll: 0,
  };
}

function checkInvariants(state: ViewState): void {
  if (state.report && !state.currentDoc) {
    throw new Error("invariant violation: report present without a document");
  }
  if (state.report && state.busyStage) {
    throw new Error("invariant violation: busyStage set while a report is shown");
  }
}

type Listener = (state: ViewState) => void;

export class ViewStore {
  private state: ViewState = initialState();
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<ViewState>): void {
    const next = { ...this.state, ...patch };
    checkInvariants(next);
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  setLayout(layout: Layout): void {
    // lossless: only the layout field changes
    this.update({ layout });
  }

  toggleMaximize(pane: "pdf" | "insights"): void {
    const target: Layout = pane === "pdf" ? "pdf-max" : "insights-max";
    this.setLayout(this.state.layout === target ? "dual" : target);
  }

  beginLoad(pdfUrl: string, stage: Exclude<BusyStage, null> = "uploading"): void {
    this.update({
      currentDoc: { docHash: null, pdfUrl },
      report: null,
      error: null,
      rawFallback: null,
      busyStage: stage,
      pdfPage: 1,
      insightScroll: 0,
    });
  }

  setBusyStage(stage: BusyStage): void {
    this.update({ busyStage: stage });
  }

  completeAnalysis(docHash: string, report: InsightReport): void {
    if (!this.state.currentDoc) {
      throw new Error("completeAnalysis without a loaded document");
    }
    this.update({
      currentDoc: { ...this.state.currentDoc, docHash },
      report,
      busyStage: null,
      error: null,
      rawFallback: null,
    });
  }

  failAnalysis(message: string, rawFallback: string | null = null): void {
    this.update({ busyStage: null, error: message, rawFallback, report: null });
  }

  setPdfPage(page: number): void {
    this.update({ pdfPage: Math.max(1, page) });
  }

  setInsightScroll(offset: number): void {
    this.update({ insightScroll: Math.max(0, offset) });
  }
}
