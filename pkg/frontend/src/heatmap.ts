/** Rank-frequency heatmap: one column per relator count, one row per rank.
 *
 * Each cell carries its frequency in a data attribute so that the rendered
 * file round-trips back to the input table without re-reading the CSV.
 */

import { parseHeatmapCsv } from "./csv.js";
import { svgDocument, tag, text } from "./svg.js";

const CELL = 48;
const MARGIN_LEFT = 72;
const MARGIN_TOP = 40;
const MARGIN_BOTTOM = 48;
const MARGIN_RIGHT = 24;

function shade(frequency: number): string {
  // white at 0 up to a dark blue at 1
  const level = Math.round(255 - 215 * frequency);
  return `rgb(${level},${level},255)`;
}

export function renderHeatmap(csvText: string, title = "rank frequencies"): string {
  const table = parseHeatmapCsv(csvText);
  const nRanks = table.rankLabels.length;
  const nCols = table.rs.length;
  const width = MARGIN_LEFT + nCols * CELL + MARGIN_RIGHT;
  const height = MARGIN_TOP + nRanks * CELL + MARGIN_BOTTOM;
  const parts: string[] = [];

  parts.push(text(title, {
    x: width / 2, y: 24, "text-anchor": "middle", "font-size": 16,
    "font-family": "sans-serif",
  }));

  table.rs.forEach((r, i) => {
    const total = table.counts[i].reduce((a, b) => a + b, 0);
    for (let j = 0; j < nRanks; j++) {
      const frequency = total === 0 ? 0 : table.counts[i][j] / total;
      // rank 0 at the bottom, matching the axis label direction
      const y = MARGIN_TOP + (nRanks - 1 - j) * CELL;
      parts.push(tag("rect", {
        class: "cell",
        x: MARGIN_LEFT + i * CELL,
        y,
        width: CELL,
        height: CELL,
        fill: frequency === 0 ? "white" : shade(frequency),
        stroke: "#888",
        "data-r": r,
        "data-rank": j,
        "data-frequency": frequency.toFixed(6),
      }));
      if (frequency > 0) {
        parts.push(text(frequency.toFixed(2), {
          x: MARGIN_LEFT + i * CELL + CELL / 2,
          y: y + CELL / 2 + 4,
          "text-anchor": "middle",
          "font-size": 11,
          "font-family": "sans-serif",
          fill: frequency > 0.5 ? "white" : "black",
        }));
      }
    }
    parts.push(text(String(r), {
      x: MARGIN_LEFT + i * CELL + CELL / 2,
      y: MARGIN_TOP + nRanks * CELL + 18,
      "text-anchor": "middle", "font-size": 12, "font-family": "sans-serif",
    }));
  });

  for (let j = 0; j < nRanks; j++) {
    parts.push(text(table.rankLabels[j], {
      x: MARGIN_LEFT - 8,
      y: MARGIN_TOP + (nRanks - 1 - j) * CELL + CELL / 2 + 4,
      "text-anchor": "end", "font-size": 12, "font-family": "sans-serif",
    }));
  }
  parts.push(text("relator count", {
    x: MARGIN_LEFT + (nCols * CELL) / 2,
    y: MARGIN_TOP + nRanks * CELL + 38,
    "text-anchor": "middle", "font-size": 13, "font-family": "sans-serif",
  }));

  return svgDocument(width, height, parts);
}

/** Re-extract (r, rank, frequency) triples from a rendered heatmap. */
export function extractCellFrequencies(
  svg: string,
): { r: number; rank: number; frequency: number }[] {
  const out: { r: number; rank: number; frequency: number }[] = [];
  const re = /<rect class="cell"[^>]*data-r="(\d+)"[^>]*data-rank="(\d+)"[^>]*data-frequency="([\d.]+)"/g;
  for (const m of svg.matchAll(re)) {
    out.push({ r: Number(m[1]), rank: Number(m[2]), frequency: Number(m[3]) });
  }
  return out;
}
