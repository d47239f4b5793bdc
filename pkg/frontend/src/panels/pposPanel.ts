// Predictive-probability panel: one curve per candidate Phase III size
// against the observed Phase II difference, the GO/STOP cut lines, and a
// half-way marker at each curve's own cutoff (the c3 column).

import { formatPercent, nearestIndex, polylinePoints } from "../scales.js";
import { column, numbers, type TableResponse } from "../types.js";
import { closeSvg, openFrame } from "./layout.js";

const CURVE_COLORS = ["#1565c0", "#6a1b9a", "#00695c", "#bf360c", "#37474f"];

export interface PposCurveView {
  n3: number;
  c3: number;
  observed: number[];
  values: number[];
  decisions: string[];
  color: string;
}

export interface PposClickReadout {
  n3: number;
  observed: number;
  ppos: string;
  decision: string;
}

export function pposCurves(table: TableResponse): PposCurveView[] {
  const nCol = numbers(table, "ph3_n_per_arm");
  const c3Col = numbers(table, "c3");
  const observedCol = numbers(table, "observed_effect");
  const valueCol = numbers(table, "ppos");
  const decisionCol = column(table, "decision").map(String);
  const sizes = [...new Set(nCol)].sort((a, b) => a - b);
  return sizes.map((n3, i) => {
    const idx = nCol.map((v, j) => [v, j] as const).filter(([v]) => v === n3).map(([, j]) => j);
    return {
      n3,
      c3: c3Col[idx[0]!]!,
      observed: idx.map((j) => observedCol[j]!),
      values: idx.map((j) => valueCol[j]!),
      decisions: idx.map((j) => decisionCol[j]!),
      color: CURVE_COLORS[i % CURVE_COLORS.length]!,
    };
  });
}

export function renderPposPanel(
  table: TableResponse,
  cuts: { go: number; stop: number } = { go: 0.7, stop: 0.3 },
): string {
  const curves = pposCurves(table);
  const xLo = Math.min(...curves.map((c) => c.observed[0]!));
  const xHi = Math.max(...curves.map((c) => c.observed[c.observed.length - 1]!));
  const frame = openFrame(xLo, xHi, "observed difference in the current study",
    "predictive probability of next-study success");
  for (const [cut, label] of [[cuts.go, "GO above"], [cuts.stop, "STOP below"]] as const) {
    const py = frame.ys(cut).toFixed(2);
    frame.parts.push(
      `<line x1="${frame.xs(xLo).toFixed(2)}" y1="${py}" x2="${frame.xs(xHi).toFixed(2)}" ` +
        `y2="${py}" stroke="#888" stroke-dasharray="6,4"/>`,
    );
    frame.parts.push(
      `<text x="${frame.xs(xHi).toFixed(2)}" y="${(Number(py) - 4).toFixed(2)}" ` +
        `text-anchor="end" font-size="11" fill="#666">${label} ${cut}</text>`,
    );
  }
  for (const curve of curves) {
    frame.parts.push(
      `<polyline fill="none" stroke="${curve.color}" stroke-width="2" class="curve-n${curve.n3}" ` +
        `points="${polylinePoints(curve.observed.map(frame.xs), curve.values.map(frame.ys))}">` +
        `<title>${curve.n3} per arm</title></polyline>`,
    );
    // Half-way marker at the curve's own cutoff, read from the table.
    frame.parts.push(
      `<circle cx="${frame.xs(curve.c3).toFixed(2)}" cy="${frame.ys(0.5).toFixed(2)}" r="4" ` +
        `fill="white" stroke="${curve.color}" stroke-width="2" class="crossing-n${curve.n3}">` +
        `<title>cutoff ${curve.c3.toFixed(3)}</title></circle>`,
    );
    const endX = frame.xs(curve.observed[curve.observed.length - 1]!) - 4;
    const endY = frame.ys(curve.values[curve.values.length - 1]!) - 6;
    frame.parts.push(
      `<text x="${endX.toFixed(2)}" y="${endY.toFixed(2)}" text-anchor="end" ` +
        `font-size="12" fill="${curve.color}">${curve.n3}/arm</text>`,
    );
  }
  return closeSvg(frame.parts);
}

/** Read the decision implied by clicking near an observed value on a curve. */
export function pposClickReadout(
  table: TableResponse,
  n3: number,
  at: number,
): PposClickReadout {
  const curve = pposCurves(table).find((c) => c.n3 === n3);
  if (!curve) throw new Error(`no curve for ${n3} per arm`);
  const i = nearestIndex(curve.observed, at);
  return {
    n3,
    observed: curve.observed[i]!,
    ppos: formatPercent(curve.values[i]!),
    decision: curve.decisions[i]!,
  };
}
