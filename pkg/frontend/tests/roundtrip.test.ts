// Export round-trip: a scenario exported from the explorer session must
// load unchanged in the CLI and produce the same tables as the shipped
// scenario file it mirrors.

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { exportScenario, importScenario } from "../src/export.js";
import { DesignSession } from "../src/session.js";
import type { Scenario } from "../src/types.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const SCENARIO_A = join(FIXTURES, "example_a.json");

const PYTHON = process.env["QDM_PYTHON"] ?? "python3";

function cliAvailable(): boolean {
  const probe = spawnSync(PYTHON, ["-c", "import qdm"], { timeout: 30_000 });
  return probe.status === 0;
}

function runCli(args: string[]): Buffer {
  const result = spawnSync(PYTHON, ["-m", "qdm.cli", ...args],
    { timeout: 120_000, maxBuffer: 64 * 1024 * 1024 });
  if (result.status !== 0) {
    throw new Error(`qdm CLI failed: ${result.stderr?.toString()}`);
  }
  return result.stdout;
}

describe("scenario export", () => {
  const draft = JSON.parse(readFileSync(SCENARIO_A, "utf-8")) as Scenario;

  it("round-trips through import unchanged", () => {
    const text = exportScenario(draft);
    const { scenario, diagnostics } = importScenario(text);
    expect(diagnostics).toEqual([]);
    expect(scenario).toEqual(draft);
  });

  it("exports the session draft as the canonical document", () => {
    const session = new DesignSession(new ApiClient("http://unused"), draft);
    const exported = JSON.parse(exportScenario(session.draft)) as Scenario;
    expect(exported).toEqual(JSON.parse(readFileSync(SCENARIO_A, "utf-8")));
  });

  it("refuses to export an invalid draft", () => {
    const broken = structuredClone(draft);
    (broken.framework as { tv: number }).tv = 0.0;
    expect(() => exportScenario(broken)).toThrow(/framework\.tv/);
  });

  it.skipIf(!cliAvailable())("re-runs identically in the CLI", () => {
    const session = new DesignSession(new ApiClient("http://unused"), draft);
    const dir = mkdtempSync(join(tmpdir(), "qdm-export-"));
    const exportedPath = join(dir, "exported.json");
    writeFileSync(exportedPath, exportScenario(session.draft));
    for (const command of ["thresholds", "oc", "evaluate"]) {
      const fromExport = runCli([command, "--scenario", exportedPath]);
      const fromShipped = runCli([command, "--scenario", SCENARIO_A]);
      expect(fromExport.equals(fromShipped)).toBe(true);
    }
  });
});
