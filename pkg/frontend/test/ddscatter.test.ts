import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { extractDisks, renderDdScatter } from "../src/ddscatter.js";

const golden = readFileSync(new URL("../golden/census.csv", import.meta.url), "utf8");

describe("renderDdScatter", () => {
  it("renders the golden census without error", () => {
    const svg = renderDdScatter(golden);
    expect(svg).toContain("<svg");
    expect(svg).toContain('class="guide guide-sqrt"');
    expect(svg).toContain('class="guide guide-identity"');
  });

  it("plots every point between the y=sqrt(x) and y=x guides", () => {
    const disks = extractDisks(renderDdScatter(golden));
    expect(disks.length).toBeGreaterThan(10);
    for (const p of disks) {
      expect(p.y * p.y).toBeGreaterThanOrEqual(p.x); // y >= sqrt(x)
      expect(p.y).toBeLessThanOrEqual(p.x); // y <= x
    }
  });

  it("skips count=0 rows", () => {
    const svg = renderDdScatter("d2_over_D,d,count\n4,2,0\n9,3,7\n");
    const disks = extractDisks(svg);
    expect(disks).toEqual([{ x: 9, y: 3, count: 7 }]);
  });

  it("renders a single-point census as one disk", () => {
    const svg = renderDdScatter("d2_over_D,d,count\n2,2,1\n");
    expect(extractDisks(svg).length).toBe(1);
  });

  it("scales disk area with count", () => {
    const svg = renderDdScatter("d2_over_D,d,count\n1,1,100\n4,2,25\n");
    const radii = [...svg.matchAll(/<circle class="disk"[^>]* r="([\d.]+)"/g)]
      .map((m) => Number(m[1]));
    expect(radii.length).toBe(2);
    expect(radii[0] / radii[1]).toBeCloseTo(2, 5); // sqrt(100/25)
  });
});
