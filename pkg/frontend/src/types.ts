// Payload shapes for the review service.  Field names mirror the server's
// API reference exactly — do not rename.

export type StudyStatus = "included" | "excluded" | "undecided";

export type ViewKind = "map" | "bundles" | "network";
export type OverlayName = "none" | "status" | "clusters" | "expression" | "knn";

export interface ProjectConfig {
  seed?: number;
  cluster_k?: number | null;
  leaf_capacity?: number;
  min_term_length?: number;
  min_document_frequency?: number;
  weighting?: "tfidf" | "tf";
  knn_k?: number;
  control_count?: number | null;
  neighborhood_k?: number;
  beta?: number;
  samples?: number;
  force_iterations?: number;
}

export interface ProjectCreated {
  project_id: string;
  n_studies: number;
  corpus_hash: string;
  started_at: number;
  warnings: string[];
}

export interface MapPoint {
  id: string;
  x: number;
  y: number;
  is_control: boolean;
  status: StudyStatus;
  cluster: number;
}

export interface ClusterTopics {
  cluster: number;
  topics: string[];
}

export interface ExpressionOverlay {
  name: "expression";
  expression: string;
  counts: Record<string, number>;
  shade: Record<string, number>;
}

export interface KnnOverlay {
  name: "knn";
  focus: string;
  k: number;
  neighbors: string[];
}

export interface PlainOverlay {
  name: "status" | "clusters";
}

export type Overlay = ExpressionOverlay | KnnOverlay | PlainOverlay;

export interface MapView {
  kind: "map";
  points: MapPoint[];
  quality: number;
  clusters: ClusterTopics[];
  overlay?: Overlay;
}

export interface BundlePoint {
  x: number;
  y: number;
  t: number;
}

export interface BundledEdge {
  source: string;
  target: string;
  points: BundlePoint[];
}

export interface BundlesView {
  kind: "bundles";
  points: MapPoint[];
  edges: BundledEdge[];
  overlay?: Overlay;
}

export interface NetworkNode {
  id: string;
  x: number;
  y: number;
  status: StudyStatus;
}

export interface NetworkEdge {
  source: string;
  target: string;
}

export interface SharedEdge extends NetworkEdge {
  weight: number;
}

export interface NetworkView {
  kind: "network";
  nodes: NetworkNode[];
  cite_edges: NetworkEdge[];
  shared_edges: SharedEdge[];
  isolated: string[];
  isolated_status: Record<string, StudyStatus>;
  iterations_run: number;
  overlay?: Overlay;
}

export type AnyView = MapView | BundlesView | NetworkView;

export interface Decision {
  study_id: string;
  status: StudyStatus;
  at: number;
  note: string;
}

export interface SessionState {
  corpus_hash: string;
  started_at: number;
  statuses: Record<string, StudyStatus>;
  selection: string[];
  decisions: Decision[];
}

export interface StudySummary {
  id: string;
  title: string;
  abstract: string;
  keywords: string[];
  status: StudyStatus;
  cited_count: number;
}

export interface StudyDetail extends StudySummary {
  references: string[];
}

export interface Metrics {
  n_studies: number;
  included: number;
  excluded: number;
  undecided: number;
  correct: number;
  incorrect: number;
  false_negatives: number;
  false_positives: number;
  elapsed_minutes: number;
}
