#!/usr/bin/env node
/**
 * pacnav-plot: render SVG figures from a simulator run directory.
 *
 *   pacnav-plot distance --in RUN_DIR --out IMG
 *   pacnav-plot order    --in RUN_DIR --out IMG [--window N]
 *   pacnav-plot traj     --in RUN_DIR --out IMG [--marks t1,t2,...]
 */

import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import {
  renderDistanceEnvelope,
  renderOrder,
  renderTrajectories,
} from "./charts.js";
import { loadRunDir } from "./dataset.js";

const USAGE = `usage: pacnav-plot {distance|order|traj} --in RUN_DIR --out IMG
                   [--window N] [--marks t1,t2,...] [--width PX] [--height PX]`;

function parsePositiveInt(raw: string, name: string): number {
  const v = Number(raw);
  if (!Number.isInteger(v) || v <= 0) {
    throw new RangeError(`--${name} must be a positive integer, got ${raw}`);
  }
  return v;
}

function parseMarks(raw: string): number[] {
  return raw.split(",").map((part) => {
    const t = Number(part);
    if (!Number.isFinite(t)) throw new RangeError(`bad mark time ${part}`);
    return t;
  });
}

export function main(argv: string[]): number {
  let positionals: string[];
  let values: Record<string, string | boolean | undefined>;
  try {
    ({ positionals, values } = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        window: { type: "string" },
        marks: { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    }));
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n${USAGE}\n`);
    return 1;
  }
  if (values.help) {
    process.stdout.write(`${USAGE}\n`);
    return 0;
  }

  try {
    const command = positionals[0];
    if (positionals.length !== 1 || !command) {
      throw new RangeError("expected exactly one of: distance, order, traj");
    }
    const inDir = values.in as string | undefined;
    const outPath = values.out as string | undefined;
    if (!inDir) throw new RangeError("--in RUN_DIR is required");
    if (!outPath) throw new RangeError("--out IMG is required");
    const size = {
      width: values.width ? parsePositiveInt(values.width as string, "width") : undefined,
      height: values.height ? parsePositiveInt(values.height as string, "height") : undefined,
    };

    const data = loadRunDir(inDir);
    let svg: string;
    if (command === "distance") {
      svg = renderDistanceEnvelope(data, size);
    } else if (command === "order") {
      const window = values.window
        ? parsePositiveInt(values.window as string, "window")
        : 50;
      svg = renderOrder(data, window, size);
    } else if (command === "traj") {
      const marks = values.marks ? parseMarks(values.marks as string) : [];
      svg = renderTrajectories(data, marks, size);
    } else {
      throw new RangeError(`unknown command ${command}; expected distance, order or traj`);
    }
    writeFileSync(outPath, svg, "utf8");
    process.stdout.write(`wrote ${outPath}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

process.exitCode = main(process.argv.slice(2));
