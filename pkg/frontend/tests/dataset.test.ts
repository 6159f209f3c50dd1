import { copyFileSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { beforeAll, describe, expect, it } from "vitest";
import {
  expectedHeader,
  loadRunDir,
  parseTimeseries,
  perAgent,
  perStep,
  RunDataset,
  SchemaError,
  stepCount,
} from "../src/dataset.js";
import { FIXTURE_DIR } from "./helpers.js";

describe("expectedHeader", () => {
  it("appends one estimate column pair per agent", () => {
    const header = expectedHeader(3);
    expect(header.length).toBe(21 + 6);
    expect(header.slice(0, 3)).toEqual(["step", "time_s", "uav"]);
    expect(header.at(-2)).toBe("est_x_2");
    expect(header.at(-1)).toBe("est_y_2");
  });
});

function csvFor(nUavs: number, rows: string[]): string {
  return [expectedHeader(nUavs).join(","), ...rows].join("\n") + "\n";
}

describe("parseTimeseries", () => {
  // 23 columns for a single agent: 21 fixed + est_x_0 + est_y_0.
  const row = (step: number, time: string, rest: string) =>
    `${step},${time},0,1,2,${rest}`;

  it("round-trips plain and exponent floats and nan", () => {
    const text = csvFor(1, [
      row(0, "0.0", "0.1,-3.5e-07,0,0,0,0,0,0,-1,nan,nan,0,nan,nan,nan,nan,0.30000000000000004,2.5"),
    ]);
    const { columns, nRows } = parseTimeseries(text, 1);
    expect(nRows).toBe(1);
    expect(columns.get("x")![0]).toBe(0.1);
    expect(columns.get("y")![0]).toBe(-3.5e-7);
    expect(columns.get("target_x")![0]).toBeNaN();
    expect(columns.get("est_x_0")![0]).toBe(0.30000000000000004);
  });

  it("rejects a tampered header", () => {
    const text = csvFor(1, []).replace("omega", "order");
    expect(() => parseTimeseries(text, 1)).toThrow(SchemaError);
    expect(() => parseTimeseries(text, 1)).toThrow(/unexpected header/);
  });

  it("rejects a header for the wrong agent count", () => {
    const text = csvFor(2, []);
    expect(() => parseTimeseries(text, 3)).toThrow(/unexpected header/);
  });

  it("rejects short rows", () => {
    const text = csvFor(1, ["0,0.0,0"]);
    expect(() => parseTimeseries(text, 1)).toThrow(/3 cells, want 23/);
  });

  it("rejects non-numeric cells", () => {
    const text = csvFor(1, [
      row(0, "0.0", "oops,0,0,0,0,0,0,0,-1,nan,nan,0,nan,nan,nan,nan,0,0"),
    ]);
    expect(() => parseTimeseries(text, 1)).toThrow(/column x is not numeric/);
  });

  it("rejects an empty file", () => {
    expect(() => parseTimeseries("", 1)).toThrow(SchemaError);
  });
});

describe("loadRunDir on the case-1A fixture", () => {
  let data: RunDataset;
  beforeAll(() => {
    data = loadRunDir(FIXTURE_DIR);
  });

  it("matches the documented schema", () => {
    expect(data.header).toEqual(expectedHeader(data.config.n_uavs));
    expect(data.nRows % data.config.n_uavs).toBe(0);
    expect(data.nRows).toBe(data.summary.n_records * data.config.n_uavs);
  });

  it("carries the resolved config and forest", () => {
    expect(data.config.n_uavs).toBe(3);
    expect(data.config.informed_ids).toEqual([0]);
    expect(data.forest.trees.length).toBeGreaterThan(0);
    expect(data.summary.completed).toBe(true);
  });

  it("has strictly increasing per-agent timestamps", () => {
    const time = perAgent(data, "time_s", 0);
    for (let k = 1; k < time.length; k++) {
      expect(time[k]!).toBeGreaterThan(time[k - 1]!);
    }
  });

  it("perStep and perAgent slice the interleaved rows", () => {
    expect(perStep(data, "time_s").length).toBe(stepCount(data));
    expect(perAgent(data, "uav", 2).every((v) => v === 2)).toBe(true);
    expect(() => perStep(data, "no_such_column")).toThrow(SchemaError);
    expect(() => perAgent(data, "x", 3)).toThrow(SchemaError);
  });
});

describe("loadRunDir validation", () => {
  function tamperedDir(edit: (lines: string[]) => string[]): string {
    const dir = mkdtempSync(join(tmpdir(), "pacnav-plot-"));
    copyFileSync(join(FIXTURE_DIR, "summary.json"), join(dir, "summary.json"));
    copyFileSync(join(FIXTURE_DIR, "forest.json"), join(dir, "forest.json"));
    const lines = readFileSync(join(FIXTURE_DIR, "timeseries.csv"), "utf8")
      .trimEnd()
      .split("\n");
    // Header plus the first three steps of the 3-agent fixture.
    const head = lines.slice(0, 10);
    writeFileSync(join(dir, "timeseries.csv"), edit(head).join("\n") + "\n");
    return dir;
  }

  it("accepts an untampered prefix", () => {
    const data = loadRunDir(tamperedDir((lines) => lines));
    expect(stepCount(data)).toBe(3);
  });

  it("rejects out-of-order agent rows", () => {
    const dir = tamperedDir((lines) => {
      [lines[2], lines[3]] = [lines[3]!, lines[2]!];
      return lines;
    });
    expect(() => loadRunDir(dir)).toThrow(/agents out of order/);
  });

  it("rejects non-increasing timestamps", () => {
    const dir = tamperedDir((lines) =>
      // Replay step 0's rows in step 1's slot; same timestamps twice.
      [...lines.slice(0, 4), ...lines.slice(1, 4), ...lines.slice(7, 10)]
    );
    expect(() => loadRunDir(dir)).toThrow(/not strictly increasing/);
  });

  it("rejects a truncated final step", () => {
    const dir = tamperedDir((lines) => lines.slice(0, 9));
    expect(() => loadRunDir(dir)).toThrow(/not a multiple/);
  });
});
