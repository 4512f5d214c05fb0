/** Reader for the simulator's schema-1 sweep CSVs. */

export const SCHEMA_LINE = "#schema=1";

export const REQUIRED_COLUMNS = [
  "protocol", "layers", "eta", "p_link", "T1_e", "T2_e", "T1_n", "T2_n",
  "p_e", "p_n", "placement", "placement_param", "extend", "reset_policy",
  "n_sims", "base_seed",
  "mean_fidelity", "stderr_fidelity", "mean_query_time", "stderr_query_time",
] as const;

export type ColumnName = (typeof REQUIRED_COLUMNS)[number];

/** One sweep grid point with its Monte Carlo summary. */
export interface SweepRow {
  protocol: string;
  layers: number;
  eta: number;
  p_link: number;
  T1_e: number;
  T2_e: number;
  T1_n: number;
  T2_n: number;
  p_e: number;
  p_n: number;
  placement: string;
  placement_param: number;
  extend: boolean;
  reset_policy: string;
  n_sims: number;
  base_seed: number;
  mean_fidelity: number;
  stderr_fidelity: number;
  mean_query_time: number;
  stderr_query_time: number;
}

const STRING_COLUMNS = new Set(["protocol", "placement", "reset_policy"]);
const BOOL_COLUMNS = new Set(["extend"]);

export class CsvError extends Error {}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError("empty file: no schema line");
  }
  if (lines[0] !== SCHEMA_LINE) {
    throw new CsvError(`schema mismatch: expected '${SCHEMA_LINE}', got '${lines[0]}'`);
  }
  if (lines.length < 2) {
    throw new CsvError("missing header line");
  }
  const header = lines[1].split(",");
  for (const col of REQUIRED_COLUMNS) {
    if (!header.includes(col)) {
      throw new CsvError(`missing required column '${col}'`);
    }
  }
  const rows: SweepRow[] = [];
  for (let i = 2; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvError(`row ${i + 1} has ${cells.length} cells, header has ${header.length}`);
    }
    const row: Record<string, unknown> = {};
    header.forEach((col, j) => {
      const raw = cells[j];
      if (STRING_COLUMNS.has(col)) {
        row[col] = raw;
      } else if (BOOL_COLUMNS.has(col)) {
        row[col] = raw === "true";
      } else {
        const v = Number(raw);
        if (!Number.isFinite(v)) {
          throw new CsvError(`row ${i + 1}: column '${col}' is not numeric: '${raw}'`);
        }
        row[col] = v;
      }
    });
    rows.push(row as unknown as SweepRow);
  }
  if (rows.length === 0) {
    throw new CsvError("no data rows");
  }
  return rows;
}

/** Distinct values of a column, in first-seen order. */
export function distinct<K extends keyof SweepRow>(rows: SweepRow[], key: K): SweepRow[K][] {
  const seen: SweepRow[K][] = [];
  for (const row of rows) {
    if (!seen.includes(row[key])) seen.push(row[key]);
  }
  return seen;
}
