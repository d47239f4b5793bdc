// DOM wiring for the explorer page. All statistics arrive from the
// calculation service; this file only moves values between controls,
// session state, and the pure render functions.

import { ApiClient } from "./api.js";
import { exportScenario, importScenario } from "./export.js";
import { ocHoverReadout, renderOcPanel } from "./panels/ocPanel.js";
import { pposClickReadout, pposCurves, renderPposPanel } from "./panels/pposPanel.js";
import { renderThresholdBar, thresholdSegments } from "./panels/thresholdBar.js";
import { DesignSession } from "./session.js";
import type { DualCriterionFramework, Scenario } from "./types.js";
import { nearestIndex } from "./scales.js";
import { numbers } from "./types.js";

const DEFAULT_SCENARIO: Scenario = {
  schema_version: "1",
  endpoint: { sigma: 6.0, n_treatment: 80, n_control: 80 },
  framework: {
    kind: "dual_criterion",
    mv: 2.0,
    tv: 3.0,
    go_confidence: 0.7,
    stop_confidence: 0.9,
    both_met_policy: "STOP",
  },
  observed: { effect: 2.6 },
  design_prior: { mean: 3.2, spread: 2.0, spread_interpretation: "sd" },
  program: {
    ph3: { sigma: 6.0, n_treatment: 200, n_control: 200 },
    ph3_rule: { alpha: 0.025, mv: 2.0, relevance_confidence: 0.8 },
    go_cut: 0.7,
    stop_cut: 0.3,
  },
  grids: { ph3_n_list: [100, 200, 300] },
  mc: { n_sims: 200000, seed: 20201108 },
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function bindSlider(
  id: string,
  session: DesignSession,
  apply: (draft: Scenario, value: number) => void,
): void {
  const input = el<HTMLInputElement>(id);
  const label = el<HTMLElement>(`${id}-value`);
  label.textContent = input.value;
  input.addEventListener("input", () => {
    label.textContent = input.value;
    session.updateDraft((draft) => apply(draft, Number(input.value)));
    session.refreshAll();
  });
}

function dual(draft: Scenario): DualCriterionFramework {
  if (draft.framework.kind !== "dual_criterion") {
    throw new Error("the explorer edits dual-criterion rules");
  }
  return draft.framework;
}

export function start(base: string): void {
  const api = new ApiClient(base);
  const session = new DesignSession(api, DEFAULT_SCENARIO);
  let ocAxis: "oc" | "oc-vs-n" = "oc";

  session.registerPanel("thresholds", "thresholds");
  session.registerPanel("oc", "oc");
  session.registerPanel("ppos", "ppos-curve");

  const diagnosticsBox = el<HTMLElement>("diagnostics");
  const hoverBox = el<HTMLElement>("oc-hover");
  const clickBox = el<HTMLElement>("ppos-click");

  session.onChange(({ panel, state }) => {
    diagnosticsBox.textContent = state.error ?? "";
    if (!state.response) return;
    if (panel === "thresholds") {
      el("threshold-panel").innerHTML = renderThresholdBar(state.response);
      const segments = thresholdSegments(state.response);
      el("threshold-summary").textContent =
        `STOP below ${segments.labels[0]}, GO above ` +
        `${segments.labels[segments.labels.length - 1]}`;
    } else if (panel === "oc") {
      const table = state.response;
      const axisLabel = ocAxis === "oc" ? "true treatment effect" : "patients per arm";
      const host = el("oc-panel");
      host.innerHTML = renderOcPanel(table, axisLabel);
      const svg = host.querySelector("svg")!;
      svg.addEventListener("mousemove", (event) => {
        const rect = svg.getBoundingClientRect();
        const frac = (event.clientX - rect.left) / rect.width;
        const axis = numbers(table, "axis_value");
        const value = axis[nearestIndex(
          axis, axis[0]! + frac * (axis[axis.length - 1]! - axis[0]!))]!;
        const readout = ocHoverReadout(table, value);
        hoverBox.textContent =
          `${axisLabel} ${readout.axisValue}: GO ${readout.go}, ` +
          `CONSIDER ${readout.consider}, STOP ${readout.stop}`;
      });
    } else if (panel === "ppos") {
      const table = state.response;
      const host = el("ppos-panel");
      host.innerHTML = renderPposPanel(table);
      const svg = host.querySelector("svg")!;
      svg.addEventListener("click", (event) => {
        const rect = svg.getBoundingClientRect();
        const frac = (event.clientX - rect.left) / rect.width;
        const curves = pposCurves(table);
        const first = curves[0]!;
        const xLo = first.observed[0]!;
        const xHi = first.observed[first.observed.length - 1]!;
        const at = xLo + frac * (xHi - xLo);
        const lines = curves.map((curve) => {
          const readout = pposClickReadout(table, curve.n3, at);
          return `${curve.n3}/arm at ${readout.observed}: ${readout.ppos} -> ${readout.decision}`;
        });
        clickBox.textContent = lines.join("; ");
      });
    }
  });

  bindSlider("mv", session, (draft, value) => { dual(draft).mv = value; });
  bindSlider("tv", session, (draft, value) => { dual(draft).tv = value; });
  bindSlider("go-confidence", session, (draft, value) => {
    dual(draft).go_confidence = value;
  });
  bindSlider("stop-confidence", session, (draft, value) => {
    dual(draft).stop_confidence = value;
  });
  bindSlider("sigma", session, (draft, value) => {
    draft.endpoint.sigma = value;
    if (draft.program) draft.program.ph3.sigma = value;
  });
  bindSlider("n-per-arm", session, (draft, value) => {
    draft.endpoint.n_treatment = value;
    draft.endpoint.n_control = value;
  });
  bindSlider("prior-mean", session, (draft, value) => {
    if (draft.design_prior) draft.design_prior.mean = value;
  });
  bindSlider("prior-spread", session, (draft, value) => {
    if (draft.design_prior) draft.design_prior.spread = value;
  });

  el<HTMLButtonElement>("axis-toggle").addEventListener("click", () => {
    ocAxis = ocAxis === "oc" ? "oc-vs-n" : "oc";
    const state = session.panels.get("oc")!;
    state.command = ocAxis;
    state.dirty = true;
    session.requestRefresh("oc");
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    const blob = new Blob([exportScenario(session.draft)], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "scenario.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });

  el<HTMLInputElement>("import").addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      const { scenario, diagnostics } = importScenario(text);
      if (!scenario) {
        diagnosticsBox.textContent = diagnostics
          .map((d) => `${d.path || "<file>"}: ${d.message}`)
          .join("\n");
        return;
      }
      session.updateDraft((draft) => Object.assign(draft, scenario));
      session.refreshAll();
    });
  });

  void api.health().then(
    (h) => { el("service-status").textContent = `service ${h.version}`; },
    () => { el("service-status").textContent = "service unreachable"; },
  );
  session.refreshAll();
}

declare global {
  interface Window {
    qdmExplorerStart: typeof start;
  }
}

if (typeof window !== "undefined") {
  window.qdmExplorerStart = start;
}
