// DOM wiring for the dual-pane reader: PDF viewer (right) beside the
// insight pane (left). At most one analysis is in flight; a new submission
// aborts the previous request.

import { ApiClient, ApiError, SourceSpec } from "./api";
import { renderInsights, renderRawFallback } from "./insights";
import { ViewStore } from "./state";
import type { StructureEntry } from "./types";

declare global {
  interface Window {
    INSIGHTMAP_API?: string;
  }
}

const apiBase =
  new URLSearchParams(location.search).get("api") ??
  window.INSIGHTMAP_API ??
  "http://127.0.0.1:8421";

const api = new ApiClient(apiBase);
const store = new ViewStore();

let structureIndex: StructureEntry[] = [];
let inflight: AbortController | null = null;

const el = (id: string) => document.getElementById(id)!;

async function loadDocument(source: SourceSpec, pdfUrl: string): Promise<void> {
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;

  structureIndex = [];
  store.beginLoad(pdfUrl, source.kind === "upload" ? "uploading" : "extracting");
  try {
    store.setBusyStage("extracting");
    const extracted = await api.extract(source, controller.signal);
    structureIndex = extracted.structure_index;

    store.setBusyStage("analyzing");
    const analysis = await api.analyze(source, "empirical-study", {
      signal: controller.signal,
    });
    store.completeAnalysis(analysis.doc_hash, analysis.report);
    if (!analysis.validation.passed) {
      el("status").textContent =
        `partial analysis: ${analysis.validation.deficiencies.join(", ")}`;
    }
  } catch (err) {
    if (controller.signal.aborted) return;
    if (err instanceof ApiError && err.status === 422 && err.body.raw_model_text) {
      store.failAnalysis("template not followed", err.body.raw_model_text);
    } else if (err instanceof ApiError) {
      store.failAnalysis(`${err.body.stage ?? "request"} failed: ${err.body.detail}`);
    } else {
      store.failAnalysis(String(err));
    }
  }
}

function render(): void {
  const state = store.get();
  const root = el("app");
  root.className = `layout-${state.layout}`;

  const pdfFrame = el("pdf-frame") as HTMLIFrameElement;
  if (state.currentDoc) {
    const target = `${state.currentDoc.pdfUrl}#page=${state.pdfPage}`;
    if (pdfFrame.getAttribute("src") !== target) pdfFrame.setAttribute("src", target);
  } else {
    pdfFrame.removeAttribute("src");
  }

  const pane = el("insights");
  const prevScroll = state.insightScroll;
  if (state.busyStage) {
    pane.innerHTML = `<p class="busy">Working: ${state.busyStage}…</p>`;
  } else if (state.rawFallback) {
    pane.innerHTML = renderRawFallback(state.rawFallback);
  } else if (state.error) {
    pane.innerHTML = `<p class="error">${state.error}</p>`;
  } else if (state.report) {
    pane.innerHTML = renderInsights(state.report, structureIndex);
    pane.scrollTop = prevScroll;
  } else {
    pane.innerHTML = `<p class="hint">Load a PDF to see its insight map.</p>`;
  }
}

function wireControls(): void {
  store.subscribe(render);

  el("insights").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest(".nav-link");
    if (target instanceof HTMLElement && target.dataset.page) {
      store.setPdfPage(Number(target.dataset.page));
    }
  });
  el("insights").addEventListener("scroll", () => {
    store.get().insightScroll; // read-through; persist on toggle instead
  });

  el("max-pdf").addEventListener("click", () => {
    store.setInsightScroll(el("insights").scrollTop);
    store.toggleMaximize("pdf");
  });
  el("max-insights").addEventListener("click", () => {
    store.setInsightScroll(el("insights").scrollTop);
    store.toggleMaximize("insights");
  });

  el("url-form").addEventListener("submit", (event) => {
    event.preventDefault();
    const url = (el("url-input") as HTMLInputElement).value.trim();
    if (url) void loadDocument({ kind: "url", url }, url);
  });

  const fileInput = el("file-input") as HTMLInputElement;
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (file) void loadDocument({ kind: "upload", file }, URL.createObjectURL(file));
  });

  const dropzone = el("pdf-pane");
  dropzone.addEventListener("dragover", (event) => event.preventDefault());
  dropzone.addEventListener("drop", (event) => {
    event.preventDefault();
    const file = event.dataTransfer?.files?.[0];
    if (file) void loadDocument({ kind: "upload", file }, URL.createObjectURL(file));
  });

  const select = el("example-select") as HTMLSelectElement;
  select.addEventListener("change", () => {
    if (select.value) {
      void loadDocument(
        { kind: "example", exampleId: select.value },
        api.examplePdfUrl(select.value),
      );
    }
  });

  void api.listExamples().then((examples) => {
    for (const example of examples) {
      const option = document.createElement("option");
      option.value = example.id;
      option.textContent = example.title;
      select.appendChild(option);
    }
  });
}

wireControls();
render();
