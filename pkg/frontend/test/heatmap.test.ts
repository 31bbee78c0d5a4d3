import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { parseHeatmapCsv } from "../src/csv.js";
import { extractCellFrequencies, renderHeatmap } from "../src/heatmap.js";

const golden = readFileSync(new URL("../golden/heatmap_m2.csv", import.meta.url), "utf8");

describe("renderHeatmap", () => {
  it("renders the golden m=2 table with (m+1) * r_range cells", () => {
    const svg = renderHeatmap(golden);
    expect(svg).toContain("<svg");
    const cells = svg.match(/<rect class="cell"/g) ?? [];
    expect(cells.length).toBe(3 * 10);
  });

  it("round-trips cell frequencies through the rendered metadata", () => {
    const svg = renderHeatmap(golden);
    const table = parseHeatmapCsv(golden);
    const cells = extractCellFrequencies(svg);
    expect(cells.length).toBe(30);
    for (const cell of cells) {
      const i = table.rs.indexOf(cell.r);
      const total = table.counts[i].reduce((a, b) => a + b, 0);
      const want = table.counts[i][cell.rank] / total;
      expect(Math.abs(cell.frequency - want)).toBeLessThan(1e-6);
    }
  });

  it("leaves all-zero columns blank without crashing", () => {
    const svg = renderHeatmap("r,rank_0,rank_1\n1,0,0\n2,3,1\n");
    const blank = svg.match(/<rect class="cell"[^>]*fill="white"/g) ?? [];
    expect(blank.length).toBe(2);
  });

  it("is deterministic", () => {
    expect(renderHeatmap(golden)).toBe(renderHeatmap(golden));
  });
});
