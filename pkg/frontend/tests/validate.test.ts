// The client-side validation mirror must accept what the service accepts
// and name problems with the same paths the service uses.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { validateScenario } from "../src/validate.js";
import type { Scenario } from "../src/types.js";

const FIXTURES = join(__dirname, "..", "fixtures");

function fixture(name: string): Scenario {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as Scenario;
}

describe("validateScenario", () => {
  it("accepts both shipped scenarios", () => {
    expect(validateScenario(fixture("example_a.json"))).toEqual([]);
    expect(validateScenario(fixture("example_b.json"))).toEqual([]);
  });

  it("rejects tv <= mv with the server's path", () => {
    const draft = fixture("example_a.json");
    (draft.framework as { tv: number }).tv = 1.0;
    const diags = validateScenario(draft);
    expect(diags.some((d) => d.path === "framework.tv" && d.kind === "invariant_violation"))
      .toBe(true);
  });

  it("rejects a missing spread interpretation", () => {
    const draft = fixture("example_a.json");
    delete (draft.design_prior as Record<string, unknown>)["spread_interpretation"];
    const diags = validateScenario(draft);
    expect(diags.some((d) => d.path === "design_prior.spread_interpretation")).toBe(true);
  });

  it("rejects unknown fields anywhere", () => {
    const draft = fixture("example_a.json") as Scenario & Record<string, unknown>;
    draft["colour"] = "blue";
    (draft.framework as unknown as Record<string, unknown>)["epsilon"] = 1;
    const paths = validateScenario(draft).map((d) => d.path);
    expect(paths).toContain("colour");
    expect(paths).toContain("framework.epsilon");
  });

  it("rejects a missing framework discriminant", () => {
    const draft = fixture("example_a.json");
    delete (draft.framework as Record<string, unknown>)["kind"];
    const diags = validateScenario(draft);
    expect(diags.some((d) => d.kind === "missing_discriminant")).toBe(true);
  });

  it("flags version mismatches", () => {
    const draft = fixture("example_a.json") as Scenario & { schema_version: string };
    draft.schema_version = "2";
    expect(validateScenario(draft).some((d) => d.kind === "version_mismatch")).toBe(true);
  });

  it("checks confidence bounds", () => {
    const draft = fixture("example_a.json");
    (draft.framework as { go_confidence: number }).go_confidence = 0.5;
    expect(validateScenario(draft).some(
      (d) => d.path === "framework.go_confidence" && d.kind === "invalid_value")).toBe(true);
  });

  it("checks program cut ordering", () => {
    const draft = fixture("example_b.json");
    draft.program!.stop_cut = 0.9;
    expect(validateScenario(draft).some(
      (d) => d.path === "program.stop_cut" && d.kind === "invariant_violation")).toBe(true);
  });

  it("accepts the other framework kinds", () => {
    const base = fixture("example_a.json");
    base.framework = { kind: "significance", alpha: 0.025 };
    expect(validateScenario(base)).toEqual([]);
    base.framework = { kind: "confidence", mv: 2, go_confidence: 0.7, stop_confidence: 0.8 };
    expect(validateScenario(base)).toEqual([]);
    base.framework = { kind: "combined", mv: 2, confidence: 0.7, alpha: 0.025 };
    expect(validateScenario(base)).toEqual([]);
  });
});
