// Scenario export/import. Exported documents are plain schema-valid JSON,
// so they load unchanged in the qdm CLI and service.

import type { Scenario } from "./types.js";
import { validateScenario, type Diagnostic } from "./validate.js";

export function exportScenario(draft: Scenario): string {
  const diagnostics = validateScenario(draft);
  if (diagnostics.length > 0) {
    throw new Error(
      `refusing to export an invalid scenario:\n` +
        diagnostics.map((d) => `${d.path}: ${d.message}`).join("\n"),
    );
  }
  return JSON.stringify(draft, null, 2) + "\n";
}

export function importScenario(text: string): {
  scenario: Scenario | null;
  diagnostics: Diagnostic[];
} {
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (err) {
    return {
      scenario: null,
      diagnostics: [{ path: "", kind: "parse_error", message: `not valid JSON: ${String(err)}` }],
    };
  }
  if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
    return {
      scenario: null,
      diagnostics: [{ path: "", kind: "wrong_type", message: "expected an object" }],
    };
  }
  const scenario = parsed as Scenario;
  const diagnostics = validateScenario(scenario);
  return { scenario: diagnostics.length === 0 ? scenario : null, diagnostics };
}
