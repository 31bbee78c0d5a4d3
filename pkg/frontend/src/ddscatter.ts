/** Disk scatter of (d²/D, d) pairs on a log-scaled x axis.
 *
 * Disk area is proportional to the occurrence count. The guide curves
 * y = √x and y = x bound the admissible region, since d divides d²/D
 * which divides d².
 */

import { CensusPoint, parseCensusCsv } from "./csv.js";
import { svgDocument, tag, text } from "./svg.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 56, right: 24, top: 40, bottom: 48 };
const MAX_RADIUS = 18;

interface Scales {
  x(v: number): number;
  y(v: number): number;
  xMax: number;
  yMax: number;
}

function makeScales(points: CensusPoint[]): Scales {
  const xMax = Math.max(2, ...points.map((p) => p.d2OverD));
  const yMax = Math.max(2, ...points.map((p) => p.d));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const logMax = Math.log10(xMax);
  return {
    x: (v) => MARGIN.left + (Math.log10(v) / logMax) * plotW,
    y: (v) => MARGIN.top + plotH - (v / yMax) * plotH,
    xMax,
    yMax,
  };
}

function guidePath(scales: Scales, f: (x: number) => number): string {
  const steps = 128;
  const pieces: string[] = [];
  for (let i = 0; i <= steps; i++) {
    const x = Math.pow(scales.xMax, i / steps);
    const y = f(x);
    if (y > scales.yMax) break;
    pieces.push(`${i === 0 ? "M" : "L"}${scales.x(x).toFixed(2)},${scales.y(y).toFixed(2)}`);
  }
  return pieces.join(" ");
}

export function renderDdScatter(csvText: string, title = "(d²/D, d) census"): string {
  const points = parseCensusCsv(csvText).filter((p) => p.count > 0);
  const scales = makeScales(points);
  const maxCount = Math.max(1, ...points.map((p) => p.count));
  const parts: string[] = [];

  parts.push(text(title, {
    x: WIDTH / 2, y: 24, "text-anchor": "middle", "font-size": 16,
    "font-family": "sans-serif",
  }));

  for (const [name, f] of [
    ["sqrt", (x: number) => Math.sqrt(x)],
    ["identity", (x: number) => x],
  ] as const) {
    parts.push(tag("path", {
      class: `guide guide-${name}`,
      d: guidePath(scales, f),
      fill: "none",
      stroke: "#aaa",
      "stroke-dasharray": "4 3",
    }));
  }

  for (const p of points) {
    // area proportional to count
    const radius = MAX_RADIUS * Math.sqrt(p.count / maxCount);
    parts.push(tag("circle", {
      class: "disk",
      cx: scales.x(p.d2OverD).toFixed(2),
      cy: scales.y(p.d).toFixed(2),
      r: Math.max(1, radius).toFixed(2),
      fill: "rgba(40,80,200,0.55)",
      stroke: "#234",
      "data-x": p.d2OverD,
      "data-y": p.d,
      "data-count": p.count,
    }));
  }

  parts.push(tag("line", {
    x1: MARGIN.left, y1: HEIGHT - MARGIN.bottom,
    x2: WIDTH - MARGIN.right, y2: HEIGHT - MARGIN.bottom,
    stroke: "black",
  }));
  parts.push(tag("line", {
    x1: MARGIN.left, y1: MARGIN.top,
    x2: MARGIN.left, y2: HEIGHT - MARGIN.bottom,
    stroke: "black",
  }));
  parts.push(text("d²/D (log scale)", {
    x: WIDTH / 2, y: HEIGHT - 12, "text-anchor": "middle",
    "font-size": 13, "font-family": "sans-serif",
  }));
  parts.push(text("d", {
    x: 18, y: HEIGHT / 2, "text-anchor": "middle",
    "font-size": 13, "font-family": "sans-serif",
    transform: `rotate(-90 18 ${HEIGHT / 2})`,
  }));

  return svgDocument(WIDTH, HEIGHT, parts);
}

/** Re-extract the plotted (x, y, count) triples from a rendered scatter. */
export function extractDisks(
  svg: string,
): { x: number; y: number; count: number }[] {
  const out: { x: number; y: number; count: number }[] = [];
  const re = /<circle class="disk"[^>]*data-x="(\d+)"[^>]*data-y="(\d+)"[^>]*data-count="(\d+)"/g;
  for (const m of svg.matchAll(re)) {
    out.push({ x: Number(m[1]), y: Number(m[2]), count: Number(m[3]) });
  }
  return out;
}
