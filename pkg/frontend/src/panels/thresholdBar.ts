// Threshold bar: the decision rule collapsed onto the observed-effect
// axis, a horizontal strip with labelled breakpoints straight from the
// thresholds table.

import { linearScale } from "../scales.js";
import { DECISION_COLORS, column, numbers, type Decision, type TableResponse } from "../types.js";

const WIDTH = 720;
const HEIGHT = 170;
const BAR_Y = 62;
const BAR_H = 52;

export interface ThresholdSegments {
  cGo: number;
  cStop: number;
  overlap: boolean;
  middleLabel: Decision | "CONSIDER";
  labels: string[]; // breakpoint texts, two decimals, ascending
}

export function thresholdSegments(table: TableResponse): ThresholdSegments {
  const cGo = numbers(table, "c_go")[0]!;
  const cStop = numbers(table, "c_stop")[0]!;
  const overlap = column(table, "overlap")[0] === true;
  const policy = column(table, "both_met_policy")[0];
  const middleLabel = overlap
    ? ((policy ?? "CONSIDER") as Decision)
    : "CONSIDER";
  const lo = Math.min(cGo, cStop);
  const hi = Math.max(cGo, cStop);
  const labels = lo === hi ? [lo.toFixed(2)] : [lo.toFixed(2), hi.toFixed(2)];
  return { cGo, cStop, overlap, middleLabel, labels };
}

export function renderThresholdBar(table: TableResponse): string {
  const segments = thresholdSegments(table);
  const lo = Math.min(segments.cGo, segments.cStop);
  const hi = Math.max(segments.cGo, segments.cStop);
  const span = Math.max(hi - lo, 1e-9);
  const xMin = lo - 0.9 * span - 0.5;
  const xMax = hi + 0.9 * span + 0.5;
  const xs = linearScale(xMin, xMax, 24, WIDTH - 24);
  const zones: Array<[number, number, string]> = [
    [xMin, lo, "STOP"],
    [lo, hi, segments.middleLabel],
    [hi, xMax, "GO"],
  ];
  const parts: string[] = [];
  for (const [z0, z1, label] of zones) {
    const px0 = xs(z0);
    const px1 = xs(z1);
    if (px1 - px0 <= 0) continue;
    const color = DECISION_COLORS[label as Decision];
    parts.push(
      `<rect x="${px0.toFixed(2)}" y="${BAR_Y}" width="${(px1 - px0).toFixed(2)}" ` +
        `height="${BAR_H}" fill="${color}" fill-opacity="0.85"><title>${label}</title></rect>`,
    );
    parts.push(
      `<text x="${((px0 + px1) / 2).toFixed(2)}" y="${BAR_Y + BAR_H + 18}" ` +
        `text-anchor="middle" font-size="12" fill="${color}">${label}</text>`,
    );
  }
  for (const label of segments.labels) {
    const px = xs(Number(label)).toFixed(2);
    parts.push(
      `<line x1="${px}" y1="${BAR_Y - 12}" x2="${px}" y2="${BAR_Y + BAR_H + 4}" ` +
        `stroke="#111" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${px}" y="${BAR_Y - 18}" text-anchor="middle" font-size="13" ` +
        `font-weight="bold" class="breakpoint-label">${label}</text>`,
    );
  }
  parts.push(
    `<text x="${WIDTH / 2}" y="${HEIGHT - 8}" text-anchor="middle" font-size="12">` +
      `observed treatment difference</text>`,
  );
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">` +
    parts.join("") +
    `</svg>`
  );
}
