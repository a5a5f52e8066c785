// Payload shapes served by the inspection engine's HTTP API.
// The browser never derives these numbers itself; it only renders them.

export interface DatasetMeta {
  id: string;
  name: string;
  portal: string;
  tags: string[];
  granularity: "individual" | "aggregated";
  attribute_names: string[];
  row_count: number;
  truncated: boolean;
}

export interface DictionaryInfo {
  attributes: string[];
  version: number;
}

export interface Marker {
  x: number;
  y: number;
  count: number;
  members: string[];
}

export interface JoinableGroup {
  id: number;
  members: string[];
  coords: Record<string, [number, number]>;
  attribute_frequencies: Record<string, number>;
  privacy_frequencies: Record<string, number>;
  rank: number;
  markers: Marker[];
}

export interface GroupingResult {
  weight_chosen: number;
  quality: Record<string, number> | null;
  dictionary_version: number;
  groups: JoinableGroup[];
  noise: Record<string, [number, number]>;
}

export interface GroupingJob {
  id: string;
  status: "pending" | "running" | "done" | "error" | "cancelled";
  result?: GroupingResult;
  error?: string;
}

export interface RecordPoint {
  a: string;
  v: string;
  c: number;
}

export interface VulnerabilityProfile {
  dataset_id: string;
  record_points: RecordPoint[];
  vulnerable: RecordPoint[];
  min_count: number | null;
}

export interface SharedAttribute {
  name: string;
  H: number;
  is_privacy: boolean;
}

export interface PairRisk {
  a: string;
  b: string;
  shared: SharedAttribute[];
  p: number;
  c: number;
  risk: number;
  normalized_risk: number;
  suggested_key: string[];
  last_used_key: string[] | null;
}

export interface PairsResponse {
  dictionary_version: number;
  pairs: PairRisk[];
}

export interface StackEntry {
  label: string;
  count: number;
}

export interface Ribbon {
  from: string;
  to: string;
  count: number;
  match_indices: number[];
}

export interface MatchRecord {
  key_values: string[];
  row_index_a: number;
  row_index_b: number;
}

export interface JoinOutcome {
  a: string;
  b: string;
  key: string[];
  match_count: number;
  distinct_key_count: number;
  matches: MatchRecord[];
  stacks: Record<string, StackEntry[]>;
  ribbons: Ribbon[][];
}

export interface FeatureSuggestion {
  attribute: string;
  source: "a" | "b";
  nmi: number;
  distribution: StackEntry[];
}

export interface JoinResponse {
  join_id: string;
  outcome: JoinOutcome;
  suggestions: { from_a: FeatureSuggestion[]; from_b: FeatureSuggestion[] };
}

export interface MatchDetail {
  key_values: string[];
  row_index_a: number;
  row_index_b: number;
  row_a: Record<string, string | number | null>;
  row_b: Record<string, string | number | null>;
}
