/**
 * Loading and validating one run directory produced by the simulation
 * harness: timeseries.csv, summary.json and forest.json.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface SummaryDoc {
  completed: boolean;
  completion_step: number | null;
  completion_time_s: number | null;
  n_records: number;
  min_inter_agent: number | null;
  min_agent_tree: number | null;
  terminal_order: number | null;
}

export interface ConfigDoc {
  n_uavs: number;
  informed_ids: number[];
  goal: [number, number];
  spawn_center: [number, number];
  goal_radius: number;
  dt: number;
  r_f: number;
  r_o: number;
  [key: string]: unknown;
}

export interface ForestDoc {
  seed: number;
  area: { origin: [number, number]; width: number; height: number };
  trees: [number, number, number][];
}

export interface RunDataset {
  header: string[];
  /** Column values by name; one entry per (step, agent) row. */
  columns: Map<string, number[]>;
  nRows: number;
  summary: SummaryDoc;
  config: ConfigDoc;
  forest: ForestDoc;
}

const FIXED_COLUMNS = [
  "step", "time_s", "uav", "informed", "fsm",
  "x", "y", "vx", "vy", "nx", "ny", "cx", "cy",
  "target_uav", "target_x", "target_y",
  "omega", "min_pair_dist", "max_pair_dist", "mean_pair_dist", "min_tree_dist",
];

export function expectedHeader(nUavs: number): string[] {
  const cols = [...FIXED_COLUMNS];
  for (let j = 0; j < nUavs; j++) cols.push(`est_x_${j}`, `est_y_${j}`);
  return cols;
}

/** Parse one harness cell; 'nan' round-trips to NaN, numbers exactly. */
function parseCell(raw: string, row: number, name: string): number {
  if (raw === "nan") return NaN;
  const value = Number(raw);
  if (raw === "" || Number.isNaN(value)) {
    throw new SchemaError(`row ${row}: column ${name} is not numeric: ${raw!}`);
  }
  return value;
}

export function parseTimeseries(text: string, nUavs: number): {
  header: string[];
  columns: Map<string, number[]>;
  nRows: number;
} {
  const parsed = Papa.parse<string[]>(text.trimEnd(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`csv parse failed: ${parsed.errors[0]!.message}`);
  }
  const lines = parsed.data;
  const header = lines[0];
  if (header === undefined) throw new SchemaError("empty time-series file");
  const expected = expectedHeader(nUavs);
  if (header.length !== expected.length || expected.some((c, i) => header[i] !== c)) {
    throw new SchemaError(
      `unexpected header: got ${header.join(",")}; want ${expected.join(",")}`
    );
  }

  const columns = new Map<string, number[]>(expected.map((c) => [c, []]));
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r]!;
    if (cells.length !== expected.length) {
      throw new SchemaError(`row ${r}: ${cells.length} cells, want ${expected.length}`);
    }
    for (let i = 0; i < expected.length; i++) {
      columns.get(expected[i]!)!.push(parseCell(cells[i]!, r, expected[i]!));
    }
  }
  return { header, columns, nRows: lines.length - 1 };
}

function checkTimestamps(columns: Map<string, number[]>, nUavs: number, nRows: number): void {
  const time = columns.get("time_s")!;
  const uav = columns.get("uav")!;
  for (let r = 0; r < nRows; r++) {
    if (uav[r] !== r % nUavs) {
      throw new SchemaError(`row ${r + 1}: agents out of order`);
    }
    if (r >= nUavs && !(time[r]! > time[r - nUavs]!)) {
      throw new SchemaError(`row ${r + 1}: timestamps not strictly increasing`);
    }
  }
}

export function loadRunDir(dir: string): RunDataset {
  const summaryDoc = JSON.parse(readFileSync(join(dir, "summary.json"), "utf8"));
  const forest = JSON.parse(readFileSync(join(dir, "forest.json"), "utf8")) as ForestDoc;
  const summary = summaryDoc.summary as SummaryDoc;
  const config = summaryDoc.config as ConfigDoc;
  if (!config || typeof config.n_uavs !== "number") {
    throw new SchemaError("summary.json missing config.n_uavs");
  }

  const text = readFileSync(join(dir, "timeseries.csv"), "utf8");
  const { header, columns, nRows } = parseTimeseries(text, config.n_uavs);
  if (nRows % config.n_uavs !== 0) {
    throw new SchemaError(`${nRows} rows is not a multiple of ${config.n_uavs} agents`);
  }
  checkTimestamps(columns, config.n_uavs, nRows);
  return { header, columns, nRows, summary, config, forest };
}

/** Number of recorded steps (rows per agent). */
export function stepCount(data: RunDataset): number {
  return data.nRows / data.config.n_uavs;
}

/** The shared per-step value of a column (taken from agent 0's rows). */
export function perStep(data: RunDataset, name: string): number[] {
  const col = data.columns.get(name);
  if (col === undefined) throw new SchemaError(`no column ${name}`);
  const n = data.config.n_uavs;
  const out: number[] = [];
  for (let r = 0; r < data.nRows; r += n) out.push(col[r]!);
  return out;
}

/** One agent's value of a column at every step. */
export function perAgent(data: RunDataset, name: string, uav: number): number[] {
  const col = data.columns.get(name);
  if (col === undefined) throw new SchemaError(`no column ${name}`);
  const n = data.config.n_uavs;
  if (uav < 0 || uav >= n) throw new SchemaError(`no agent ${uav}`);
  const out: number[] = [];
  for (let r = uav; r < data.nRows; r += n) out.push(col[r]!);
  return out;
}
