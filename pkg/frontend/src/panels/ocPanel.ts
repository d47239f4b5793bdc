// Operating-characteristics panel: GO / CONSIDER / STOP probability curves
// against the true effect or the per-arm sample size, with a hover readout
// that quotes the service's numbers directly.

import { formatPercent, nearestIndex, polylinePoints } from "../scales.js";
import { DECISION_COLORS, numbers, type TableResponse } from "../types.js";
import { closeSvg, openFrame } from "./layout.js";

const SERIES: Array<{ column: string; label: keyof typeof DECISION_COLORS }> = [
  { column: "p_go", label: "GO" },
  { column: "p_consider", label: "CONSIDER" },
  { column: "p_stop", label: "STOP" },
  { column: "p_intermediate", label: "INTERMEDIATE" },
];

export interface OcHoverReadout {
  axisValue: number;
  go: string;
  consider: string;
  stop: string;
  intermediate: string;
}

export function renderOcPanel(table: TableResponse, axisLabel: string): string {
  const axis = numbers(table, "axis_value");
  const frame = openFrame(axis[0]!, axis[axis.length - 1]!, axisLabel, "probability");
  let legendX = frame.xs.lo === 0 ? 74 : 74;
  for (const series of SERIES) {
    const values = numbers(table, series.column);
    if (series.label === "INTERMEDIATE" && values.every((v) => v === 0)) continue;
    const color = DECISION_COLORS[series.label];
    frame.parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="2" class="series-${series.label}" ` +
        `points="${polylinePoints(axis.map(frame.xs), values.map(frame.ys))}">` +
        `<title>${series.label}</title></polyline>`,
    );
    frame.parts.push(
      `<rect x="${legendX}" y="10" width="11" height="11" fill="${color}"/>` +
        `<text x="${legendX + 15}" y="20" font-size="12">${series.label}</text>`,
    );
    legendX += 15 + 9 * series.label.length + 20;
  }
  return closeSvg(frame.parts);
}

/** Exact table values at the grid point nearest the hovered axis value. */
export function ocHoverReadout(table: TableResponse, at: number): OcHoverReadout {
  const axis = numbers(table, "axis_value");
  const i = nearestIndex(axis, at);
  return {
    axisValue: axis[i]!,
    go: formatPercent(numbers(table, "p_go")[i]!),
    consider: formatPercent(numbers(table, "p_consider")[i]!),
    stop: formatPercent(numbers(table, "p_stop")[i]!),
    intermediate: formatPercent(numbers(table, "p_intermediate")[i]!),
  };
}
