// Shared types mirroring the calculation service's scenario schema and
// table payloads. The UI never computes statistics itself: every displayed
// number is read out of a TableResponse.

export type Decision = "GO" | "STOP" | "CONSIDER" | "INTERMEDIATE";

export interface EndpointSection {
  sigma: number;
  n_treatment: number;
  n_control: number;
}

export interface DualCriterionFramework {
  kind: "dual_criterion";
  mv: number;
  tv: number;
  go_confidence: number;
  stop_confidence: number;
  both_met_policy?: Decision;
}

export interface SignificanceFramework {
  kind: "significance";
  alpha: number;
}

export interface ConfidenceFramework {
  kind: "confidence";
  mv: number;
  go_confidence: number;
  stop_confidence: number;
}

export interface CombinedFramework {
  kind: "combined";
  mv: number;
  confidence: number;
  alpha: number;
}

export type Framework =
  | DualCriterionFramework
  | SignificanceFramework
  | ConfidenceFramework
  | CombinedFramework;

export interface DesignPriorSection {
  mean: number;
  spread: number;
  spread_interpretation: "sd" | "variance";
  truncation?: [number, number];
}

export interface ProgramSection {
  ph3: EndpointSection;
  ph3_rule: { alpha: number; mv: number; relevance_confidence: number };
  go_cut?: number;
  stop_cut?: number;
}

export interface GridRange {
  start?: number;
  stop?: number;
  step?: number;
  values?: number[];
}

export interface GridsSection {
  effect_grid?: GridRange;
  n_grid?: GridRange;
  observed_grid?: GridRange;
  ph3_n_list?: number[];
  true_effect?: number;
}

export interface Scenario {
  schema_version: "1";
  endpoint: EndpointSection;
  framework: Framework;
  observed?: { effect: number };
  analysis_prior?: { mean: number; sd: number };
  design_prior?: DesignPriorSection;
  program?: ProgramSection;
  grids?: GridsSection;
  sample_size?: {
    true_effect: number;
    target_p_go: number;
    n_min?: number;
    n_max?: number;
  };
  mc?: { n_sims: number; seed: number; n_chunks?: number };
}

export type Cell = number | string | boolean | null;

export interface TableResponse {
  kind: string;
  columns: string[];
  data: Record<string, Cell[]>;
  provenance: {
    command: string;
    scenario_sha256: string;
    seed: number | null;
    version: string;
  };
}

export interface ApiDiagnostic {
  path: string;
  kind: string;
  message: string;
}

export interface ApiErrorBody {
  error: string;
  diagnostics?: ApiDiagnostic[];
}

export const DECISION_COLORS: Record<Decision, string> = {
  GO: "#2e7d32",
  CONSIDER: "#ff8f00",
  STOP: "#c62828",
  INTERMEDIATE: "#1565c0",
};

export function column(table: TableResponse, name: string): Cell[] {
  const values = table.data[name];
  if (!values) {
    throw new Error(`table ${table.kind} has no column ${name}`);
  }
  return values;
}

export function numbers(table: TableResponse, name: string): number[] {
  return column(table, name).map((v) => {
    if (typeof v !== "number") {
      throw new Error(`column ${name} holds a non-numeric value: ${String(v)}`);
    }
    return v;
  });
}
