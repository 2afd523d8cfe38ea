// Thin client for the analysis service. Only the documented endpoints are
// used: /analyze, /extract, /examples, /examples/{id}/pdf, /health.

import type {
  AnalyzeResponse,
  ExampleEntry,
  ExtractResponse,
  ServiceError,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ServiceError,
  ) {
    super(`${body.error}: ${body.detail}`);
  }
}

export type SourceSpec =
  | { kind: "upload"; file: Blob }
  | { kind: "url"; url: string }
  | { kind: "example"; exampleId: string };

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private sourceRequest(source: SourceSpec, signal?: AbortSignal): RequestInit {
    if (source.kind === "upload") {
      const form = new FormData();
      form.append("pdf", source.file, "upload.pdf");
      return { method: "POST", body: form, signal };
    }
    const body =
      source.kind === "url" ? { url: source.url } : { example_id: source.exampleId };
    return {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    };
  }

  private async unwrap<T>(resp: Response): Promise<T> {
    if (!resp.ok) {
      const body = (await resp.json().catch(() => ({
        error: "unknown",
        detail: resp.statusText,
        stage: null,
      }))) as ServiceError;
      throw new ApiError(resp.status, body);
    }
    return (await resp.json()) as T;
  }

  async analyze(
    source: SourceSpec,
    profile = "empirical-study",
    opts: { refresh?: boolean; signal?: AbortSignal } = {},
  ): Promise<AnalyzeResponse> {
    const params = new URLSearchParams({ profile });
    if (opts.refresh) params.set("refresh", "true");
    const resp = await this.fetchImpl(
      `${this.baseUrl}/analyze?${params}`,
      this.sourceRequest(source, opts.signal),
    );
    return this.unwrap<AnalyzeResponse>(resp);
  }

  async extract(source: SourceSpec, signal?: AbortSignal): Promise<ExtractResponse> {
    const resp = await this.fetchImpl(
      `${this.baseUrl}/extract`,
      this.sourceRequest(source, signal),
    );
    return this.unwrap<ExtractResponse>(resp);
  }

  async listExamples(): Promise<ExampleEntry[]> {
    const resp = await this.fetchImpl(`${this.baseUrl}/examples`);
    return this.unwrap<ExampleEntry[]>(resp);
  }

  examplePdfUrl(exampleId: string): string {
    return `${this.baseUrl}/examples/${encodeURIComponent(exampleId)}/pdf`;
  }
}
