// Wire types for the similarity exploration API. The UI performs no
// similarity math: every number rendered comes from one of these fields.

export type AspectName = "topology" | "text" | "authors" | "numeric";
export type Choice = "yes" | "no" | "inactive";
export type TriState = "similar" | "dissimilar" | "uncertain";

export const ASPECTS: AspectName[] = ["topology", "text", "authors", "numeric"];

export const ASPECT_LABELS: Record<AspectName, string> = {
  topology: "Citation Proximity",
  text: "Text Similarity",
  authors: "Author Similarity",
  numeric: "Numeric Attribute Similarity",
};

export interface Meta {
  articles: number;
  span: [number, number];
  corpus_checksum: string;
  thresholds: Record<AspectName, { theta_hi: number; theta_lo: number }>;
  modes: Record<AspectName, string>;
  counts: Record<AspectName, { similar: number; uncertain: number; dissimilar: number }>;
  upload_supported: boolean;
}

export interface ClusterInfo {
  members: string[];
  size: number;
  avg_score: number;
  tracked_fraction: number;
  edge_count: number;
}

export interface QueryStats {
  pair_count: number;
  covered_articles: number;
  covered_fraction: number;
}

export interface QueryPayload {
  clusters: ClusterInfo[];
  unclustered: string[];
  stats: QueryStats;
  tracked: string[] | null;
  banner: string;
}

export interface AspectDetail {
  score: number;
  class: TriState;
}

export interface NetworkNode {
  id: string;
  betweenness: number;
  bridge: boolean;
}

export interface NetworkEdge {
  source: string;
  target: string;
  aspects: Record<AspectName, AspectDetail>;
}

export interface NetworkPayload {
  nodes: NetworkNode[];
  edges: NetworkEdge[];
  matrix_order: string[];
}

export type TargetStatus = "match" | "near_miss" | "other";

export interface TargetEntry {
  id: string;
  status: TargetStatus;
  failing_aspect: AspectName | null;
  aspects: Record<AspectName, AspectDetail>;
  shared_authors: string[];
  shared_words: string[];
  strength: number;
}

export interface TargetPayload {
  target: string;
  criteria: Record<AspectName, Choice>;
  entries: TargetEntry[];
}

export interface UploadMatch {
  id: string;
  score: number;
  class: TriState;
  title: string;
}

export interface UploadPayload {
  matches: UploadMatch[];
}

export interface Article {
  id: string;
  title: string;
  authors: string[];
  year: number;
  abstract: string;
  keywords: string[];
  cite_count_a: number;
  cite_count_b: number;
  references: string[];
}

export interface ApiError {
  error: { code: string; message: string };
}
