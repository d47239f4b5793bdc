// Shared panel geometry and SVG scaffolding.

import { linearScale, ticks, type Scale } from "../scales.js";

export const WIDTH = 720;
export const HEIGHT = 380;
export const MARGIN = { left: 64, right: 24, top: 34, bottom: 48 } as const;

export interface Frame {
  xs: Scale;
  ys: Scale;
  parts: string[];
}

export function openFrame(
  xLo: number,
  xHi: number,
  xLabel: string,
  yLabel: string,
): Frame {
  const xs = linearScale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const ys = linearScale(0, 1, HEIGHT - MARGIN.bottom, MARGIN.top);
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const parts = [
    `<g stroke="#444" stroke-width="1">`,
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"/>`,
    `</g>`,
  ];
  for (const t of ticks(xLo, xHi)) {
    const px = xs(t).toFixed(2);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="#444"/>`);
    parts.push(
      `<text x="${px}" y="${y0 + 20}" text-anchor="middle" font-size="12">${t}</text>`,
    );
  }
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    const py = ys(t).toFixed(2);
    parts.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="#444"/>`);
    parts.push(
      `<text x="${x0 - 9}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="12">${t}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="12">${xLabel}</text>`,
  );
  parts.push(
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 16 ${(y0 + y1) / 2})">${yLabel}</text>`,
  );
  return { xs, ys, parts };
}

export function closeSvg(parts: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">` +
    parts.join("") +
    `</svg>`
  );
}
