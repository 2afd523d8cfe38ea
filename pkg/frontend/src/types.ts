// Wire types mirroring the backend's JSON encodings.

export type SignalKind = "innovation" | "limitation" | "high_impact_evidence";

export interface PrioritySignal {
  kind: SignalKind;
  token: string;
}

export interface SignalledBullet {
  text: string;
  signals: PrioritySignal[];
}

export type SectionKind = "abstract_intro" | "methods" | "results" | "discussion";

export interface SectionInsight {
  section_kind: SectionKind;
  bullets: SignalledBullet[];
}

export interface Contribution {
  title: string;
  detail: string;
  signals: PrioritySignal[];
}

export interface CriticalQA {
  question: string;
  answer: string;
}

export interface EvidenceRef {
  label: string;
  rationale: string;
  grounded: boolean | null;
}

export interface NavTip {
  goal: string;
  path: string[];
}

export interface InsightReport {
  sectional: SectionInsight[];
  key_contributions: Contribution[];
  limitations: SignalledBullet[];
  critical_questions: CriticalQA[];
  evidence_refs: EvidenceRef[];
  navigation_tips: NavTip[];
  raw_model_text: string;
}

export interface AnalyzeResponse {
  report: InsightReport;
  doc_hash: string;
  timings: { ocr_ms: number; llm_ms: number; parse_ms: number };
  cache_hit: boolean;
  validation: { passed: boolean; deficiencies: string[] };
  grounding_ratio: number;
}

export interface StructureEntry {
  label: string;
  page_no: number;
}

export interface ExtractResponse {
  doc_hash: string;
  markdown: string;
  structure_index: StructureEntry[];
}

export interface ExampleEntry {
  id: string;
  title: string;
}

export interface ServiceError {
  error: string;
  detail: string;
  stage: string | null;
  raw_model_text?: string;
}
