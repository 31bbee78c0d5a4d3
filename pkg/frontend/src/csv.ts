/** CSV parsing for the two campaign table schemas.
 *
 * Input files are plain comma-separated UTF-8 with a header row and no
 * quoting (the producer never emits commas inside fields), so a split-based
 * parser is sufficient. Schema violations report the offending row number.
 */

export class CsvSchemaError extends Error {
  constructor(message: string, public readonly row: number) {
    super(`row ${row}: ${message}`);
    this.name = "CsvSchemaError";
  }
}

export interface HeatmapTable {
  /** relator counts, one per data row, in file order */
  rs: number[];
  /** rank labels from the header, e.g. ["rank_0", "rank_1", "rank_2"] */
  rankLabels: string[];
  /** counts[i][j] = trials at rs[i] with rank rankLabels[j] */
  counts: number[][];
}

export interface CensusPoint {
  d2OverD: number;
  d: number;
  count: number;
}

function splitRows(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .filter((line) => line.length > 0)
    .map((line) => line.split(","));
}

function parseCount(field: string, row: number): number {
  if (!/^\d+$/.test(field)) {
    throw new CsvSchemaError(`expected a non-negative integer, got "${field}"`, row);
  }
  return Number(field);
}

export function parseHeatmapCsv(text: string): HeatmapTable {
  const rows = splitRows(text);
  if (rows.length === 0) throw new CsvSchemaError("empty file", 1);
  const header = rows[0];
  if (header[0] !== "r" || header.length < 2 ||
      header.slice(1).some((h, j) => h !== `rank_${j}`)) {
    throw new CsvSchemaError(
      `expected header "r,rank_0,...", got "${header.join(",")}"`, 1);
  }
  const rankLabels = header.slice(1);
  const rs: number[] = [];
  const counts: number[][] = [];
  rows.slice(1).forEach((fields, i) => {
    const row = i + 2;
    if (fields.length !== header.length) {
      throw new CsvSchemaError(
        `expected ${header.length} fields, got ${fields.length}`, row);
    }
    rs.push(parseCount(fields[0], row));
    counts.push(fields.slice(1).map((f) => parseCount(f, row)));
  });
  return { rs, rankLabels, counts };
}

export function parseCensusCsv(text: string): CensusPoint[] {
  const rows = splitRows(text);
  if (rows.length === 0) throw new CsvSchemaError("empty file", 1);
  if (rows[0].join(",") !== "d2_over_D,d,count") {
    throw new CsvSchemaError(
      `expected header "d2_over_D,d,count", got "${rows[0].join(",")}"`, 1);
  }
  return rows.slice(1).map((fields, i) => {
    const row = i + 2;
    if (fields.length !== 3) {
      throw new CsvSchemaError(`expected 3 fields, got ${fields.length}`, row);
    }
    const [d2OverD, d, count] = fields.map((f) => parseCount(f, row));
    if (d2OverD < 1 || d < 1) {
      throw new CsvSchemaError("d2_over_D and d must be positive", row);
    }
    return { d2OverD, d, count };
  });
}
