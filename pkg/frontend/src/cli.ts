#!/usr/bin/env node
/** plot-nilrand --kind heatmap|dd-scatter --in FILE.csv --out FILE.svg */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { CsvSchemaError } from "./csv.js";
import { renderDdScatter } from "./ddscatter.js";
import { renderHeatmap } from "./heatmap.js";

export function run(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
      },
    }));
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  const { kind, in: input, out, title } = values;
  if (!kind || !input || !out) {
    console.error("usage: plot-nilrand --kind heatmap|dd-scatter --in FILE.csv --out FILE.svg");
    return 2;
  }
  if (kind !== "heatmap" && kind !== "dd-scatter") {
    console.error(`unknown kind "${kind}" (expected heatmap or dd-scatter)`);
    return 2;
  }
  let csvText: string;
  try {
    csvText = readFileSync(input, "utf8");
  } catch (err) {
    console.error(`cannot read ${input}: ${(err as Error).message}`);
    return 1;
  }
  let svg: string;
  try {
    if (kind === "heatmap") {
      svg = title === undefined ? renderHeatmap(csvText) : renderHeatmap(csvText, title);
    } else {
      svg = title === undefined ? renderDdScatter(csvText) : renderDdScatter(csvText, title);
    }
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`schema error in ${input}, ${err.message}`);
      return 1;
    }
    throw err;
  }
  writeFileSync(out, svg);
  return 0;
}

if (process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!)) {
  process.exit(run(process.argv.slice(2)));
}
