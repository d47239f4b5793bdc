// Pure pixel-mapping helpers for SVG markup. These transform coordinates
// for layout only; the values themselves always come from service tables.

export interface Scale {
  (value: number): number;
  readonly lo: number;
  readonly hi: number;
}

export function linearScale(lo: number, hi: number, out0: number, out1: number): Scale {
  const span = hi === lo ? 1 : hi - lo;
  const fn = ((value: number) => out0 + ((value - lo) / span) * (out1 - out0)) as Scale;
  Object.defineProperty(fn, "lo", { value: lo });
  Object.defineProperty(fn, "hi", { value: hi });
  return fn;
}

export function polylinePoints(xs: number[], ys: number[]): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${xs[i]!.toFixed(2)},${ys[i]!.toFixed(2)}`);
  }
  return parts.join(" ");
}

export function ticks(lo: number, hi: number, count = 6): number[] {
  if (hi === lo) return [lo];
  const raw = (hi - lo) / Math.max(count - 1, 1);
  const magnitude = 10 ** Math.floor(Math.log10(raw));
  const step =
    [1, 2, 2.5, 5, 10].map((m) => m * magnitude).find((s) => raw <= s) ?? 10 * magnitude;
  const first = Math.ceil((lo - 1e-12) / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12; v += step) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}

/** Index of the grid value nearest to x (grid assumed sorted ascending). */
export function nearestIndex(grid: number[], x: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < grid.length; i++) {
    const d = Math.abs(grid[i]! - x);
    if (d < bestDist) {
      best = i;
      bestDist = d;
    }
  }
  return best;
}

export function formatPercent(p: number, digits = 1): string {
  return `${(100 * p).toFixed(digits)}%`;
}
