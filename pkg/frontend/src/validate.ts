// Client-side mirror of the service's strict scenario validation.
//
// The server remains the authority (it re-validates everything); this
// mirror exists so a session never sends a draft the server would bounce,
// and so slider limits can surface problems immediately. Paths and kinds
// match the server's diagnostics format.

import type { Scenario } from "./types.js";

export interface Diagnostic {
  path: string;
  kind: string;
  message: string;
}

const finite = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);

function checkUnknown(
  obj: Record<string, unknown>,
  path: string,
  allowed: string[],
  out: Diagnostic[],
): void {
  for (const key of Object.keys(obj)) {
    if (!allowed.includes(key)) {
      out.push({
        path: path ? `${path}.${key}` : key,
        kind: "unknown_field",
        message: `unknown field; allowed fields: ${[...allowed].sort().join(", ")}`,
      });
    }
  }
}

function need(
  obj: Record<string, unknown>,
  path: string,
  key: string,
  out: Diagnostic[],
): unknown {
  if (!(key in obj)) {
    out.push({
      path: path ? `${path}.${key}` : key,
      kind: "missing_field",
      message: "required field is missing",
    });
    return undefined;
  }
  return obj[key];
}

function needNumber(
  obj: Record<string, unknown>,
  path: string,
  key: string,
  out: Diagnostic[],
  opts: { min?: number; exclusiveMin?: number; exclusiveMax?: number; integer?: boolean } = {},
): number | undefined {
  const value = need(obj, path, key, out);
  if (value === undefined) return undefined;
  const full = `${path}.${key}`;
  if (!finite(value)) {
    out.push({ path: full, kind: "wrong_type", message: "expected a finite number" });
    return undefined;
  }
  if (opts.integer && !Number.isInteger(value)) {
    out.push({ path: full, kind: "wrong_type", message: `expected an integer, got ${value}` });
    return undefined;
  }
  if (opts.min !== undefined && value < opts.min) {
    out.push({ path: full, kind: "invalid_value", message: `must be >= ${opts.min}, got ${value}` });
    return undefined;
  }
  if (opts.exclusiveMin !== undefined && value <= opts.exclusiveMin) {
    out.push({ path: full, kind: "invalid_value", message: `must be > ${opts.exclusiveMin}, got ${value}` });
    return undefined;
  }
  if (opts.exclusiveMax !== undefined && value >= opts.exclusiveMax) {
    out.push({ path: full, kind: "invalid_value", message: `must be < ${opts.exclusiveMax}, got ${value}` });
    return undefined;
  }
  return value;
}

function validateEndpoint(
  value: unknown,
  path: string,
  out: Diagnostic[],
): void {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    out.push({ path, kind: "wrong_type", message: "expected an object" });
    return;
  }
  const obj = value as Record<string, unknown>;
  checkUnknown(obj, path, ["sigma", "n_treatment", "n_control"], out);
  needNumber(obj, path, "sigma", out, { exclusiveMin: 0 });
  needNumber(obj, path, "n_treatment", out, { integer: true, min: 2 });
  needNumber(obj, path, "n_control", out, { integer: true, min: 2 });
}

function validateFramework(
  value: unknown,
  path: string,
  out: Diagnostic[],
): void {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    out.push({ path, kind: "wrong_type", message: "expected an object" });
    return;
  }
  const obj = value as Record<string, unknown>;
  const kind = obj["kind"];
  if (kind === undefined) {
    out.push({
      path: `${path}.kind`,
      kind: "missing_discriminant",
      message:
        "framework needs a 'kind' discriminant: significance, confidence, combined or dual_criterion",
    });
    return;
  }
  if (kind === "significance") {
    checkUnknown(obj, path, ["kind", "alpha"], out);
    needNumber(obj, path, "alpha", out, { exclusiveMin: 0, exclusiveMax: 1 });
    return;
  }
  if (kind === "confidence") {
    checkUnknown(obj, path, ["kind", "mv", "go_confidence", "stop_confidence"], out);
    needNumber(obj, path, "mv", out);
    needNumber(obj, path, "go_confidence", out, { exclusiveMin: 0.5, exclusiveMax: 1 });
    needNumber(obj, path, "stop_confidence", out, { exclusiveMin: 0.5, exclusiveMax: 1 });
    return;
  }
  if (kind === "combined") {
    checkUnknown(obj, path, ["kind", "mv", "confidence", "alpha"], out);
    needNumber(obj, path, "mv", out);
    needNumber(obj, path, "confidence", out, { exclusiveMin: 0.5, exclusiveMax: 1 });
    needNumber(obj, path, "alpha", out, { exclusiveMin: 0, exclusiveMax: 1 });
    return;
  }
  if (kind === "dual_criterion") {
    checkUnknown(
      obj,
      path,
      ["kind", "mv", "tv", "go_confidence", "stop_confidence", "both_met_policy"],
      out,
    );
    const mv = needNumber(obj, path, "mv", out);
    const tv = needNumber(obj, path, "tv", out);
    needNumber(obj, path, "go_confidence", out, { exclusiveMin: 0.5, exclusiveMax: 1 });
    needNumber(obj, path, "stop_confidence", out, { exclusiveMin: 0.5, exclusiveMax: 1 });
    const policy = obj["both_met_policy"];
    if (policy !== undefined &&
        !["GO", "STOP", "CONSIDER", "INTERMEDIATE"].includes(policy as string)) {
      out.push({
        path: `${path}.both_met_policy`,
        kind: "invalid_value",
        message: "must be one of CONSIDER, GO, INTERMEDIATE, STOP",
      });
    }
    if (mv !== undefined && tv !== undefined && tv <= mv) {
      out.push({
        path: `${path}.tv`,
        kind: "invariant_violation",
        message: `tv must exceed mv, got tv=${tv}, mv=${mv}`,
      });
    }
    return;
  }
  out.push({
    path: `${path}.kind`,
    kind: "invalid_value",
    message: `must be one of combined, confidence, dual_criterion, significance; got ${JSON.stringify(kind)}`,
  });
}

function validateDesignPrior(value: unknown, path: string, out: Diagnostic[]): void {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    out.push({ path, kind: "wrong_type", message: "expected an object" });
    return;
  }
  const obj = value as Record<string, unknown>;
  checkUnknown(obj, path, ["mean", "spread", "spread_interpretation", "truncation"], out);
  needNumber(obj, path, "mean", out);
  needNumber(obj, path, "spread", out, { min: 0 });
  const interp = need(obj, path, "spread_interpretation", out);
  if (interp !== undefined && interp !== "sd" && interp !== "variance") {
    out.push({
      path: `${path}.spread_interpretation`,
      kind: "invalid_value",
      message: `must be one of sd, variance; got ${JSON.stringify(interp)}`,
    });
  }
  const truncation = obj["truncation"];
  if (truncation !== undefined) {
    if (!Array.isArray(truncation) || truncation.length !== 2 ||
        !finite(truncation[0]) || !finite(truncation[1])) {
      out.push({
        path: `${path}.truncation`,
        kind: "wrong_type",
        message: "expected a two-element array [lo, hi]",
      });
    } else if (!(truncation[0] < truncation[1])) {
      out.push({
        path: `${path}.truncation`,
        kind: "invariant_violation",
        message: `interval must satisfy lo < hi, got [${truncation[0]}, ${truncation[1]}]`,
      });
    }
  }
}

function validateProgram(value: unknown, path: string, out: Diagnostic[]): void {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    out.push({ path, kind: "wrong_type", message: "expected an object" });
    return;
  }
  const obj = value as Record<string, unknown>;
  checkUnknown(obj, path, ["ph3", "ph3_rule", "go_cut", "stop_cut"], out);
  const ph3 = need(obj, path, "ph3", out);
  if (ph3 !== undefined) validateEndpoint(ph3, `${path}.ph3`, out);
  const rule = need(obj, path, "ph3_rule", out);
  if (rule !== undefined) {
    if (typeof rule !== "object" || rule === null || Array.isArray(rule)) {
      out.push({ path: `${path}.ph3_rule`, kind: "wrong_type", message: "expected an object" });
    } else {
      const ruleObj = rule as Record<string, unknown>;
      checkUnknown(ruleObj, `${path}.ph3_rule`, ["alpha", "mv", "relevance_confidence"], out);
      needNumber(ruleObj, `${path}.ph3_rule`, "alpha", out, { exclusiveMin: 0, exclusiveMax: 1 });
      needNumber(ruleObj, `${path}.ph3_rule`, "mv", out);
      needNumber(ruleObj, `${path}.ph3_rule`, "relevance_confidence", out, {
        min: 0.5,
        exclusiveMax: 1,
      });
    }
  }
  const goCut = finite(obj["go_cut"]) ? (obj["go_cut"] as number) : 0.7;
  const stopCut = finite(obj["stop_cut"]) ? (obj["stop_cut"] as number) : 0.3;
  if (stopCut >= goCut) {
    out.push({
      path: `${path}.stop_cut`,
      kind: "invariant_violation",
      message: `stop_cut must be below go_cut, got ${stopCut} >= ${goCut}`,
    });
  }
}

/** Validate a scenario draft; an empty array means the server will accept it. */
export function validateScenario(draft: Scenario): Diagnostic[] {
  const out: Diagnostic[] = [];
  const obj = draft as unknown as Record<string, unknown>;
  checkUnknown(
    obj,
    "",
    ["schema_version", "endpoint", "framework", "observed", "analysis_prior",
     "design_prior", "program", "grids", "sample_size", "mc"],
    out,
  );
  if (obj["schema_version"] !== "1") {
    out.push({
      path: "schema_version",
      kind: "version_mismatch",
      message: "unsupported schema_version; this client writes '1'",
    });
  }
  const endpoint = need(obj, "", "endpoint", out);
  if (endpoint !== undefined) validateEndpoint(endpoint, "endpoint", out);
  const framework = need(obj, "", "framework", out);
  if (framework !== undefined) validateFramework(framework, "framework", out);
  if (obj["design_prior"] !== undefined) {
    validateDesignPrior(obj["design_prior"], "design_prior", out);
  }
  if (obj["program"] !== undefined) validateProgram(obj["program"], "program", out);
  if (obj["mc"] !== undefined) {
    const mc = obj["mc"];
    if (typeof mc !== "object" || mc === null || Array.isArray(mc)) {
      out.push({ path: "mc", kind: "wrong_type", message: "expected an object" });
    } else {
      const mcObj = mc as Record<string, unknown>;
      checkUnknown(mcObj, "mc", ["n_sims", "seed", "n_chunks"], out);
      needNumber(mcObj, "mc", "n_sims", out, { integer: true, min: 1 });
      needNumber(mcObj, "mc", "seed", out, { integer: true, min: 0 });
    }
  }
  return out;
}
