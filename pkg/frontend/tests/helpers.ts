import { join } from "node:path";
import { fileURLToPath } from "node:url";
import {
  ConfigDoc,
  expectedHeader,
  RunDataset,
} from "../src/dataset.js";
import { pairDistanceStats } from "../src/series.js";

export const FRONTEND_ROOT = fileURLToPath(new URL("..", import.meta.url));
export const FIXTURE_DIR = join(FRONTEND_ROOT, "tests", "fixtures", "run-1a-seed0");
export const CLI_PATH = join(FRONTEND_ROOT, "dist", "cli.js");

const BASE_CONFIG: ConfigDoc = {
  n_uavs: 0,
  informed_ids: [0],
  goal: [20, 0],
  spawn_center: [-15, 0],
  goal_radius: 6,
  dt: 0.1,
  r_f: 4,
  r_o: 2.5,
};

/**
 * In-memory dataset for unit tests; positions[k][i] is agent i's
 * position at step k. Recorded pair-distance columns are filled from
 * pairDistanceStats, everything else is zero.
 */
export function buildDataset(
  positions: [number, number][][],
  informedIds: number[] = [0]
): RunDataset {
  const steps = positions.length;
  const n = positions[0]!.length;
  const header = expectedHeader(n);
  const columns = new Map<string, number[]>(header.map((c) => [c, []]));
  const push = (name: string, v: number) => columns.get(name)!.push(v);

  for (let k = 0; k < steps; k++) {
    const xs = positions[k]!.map((p) => p[0]);
    const ys = positions[k]!.map((p) => p[1]);
    const stats = pairDistanceStats(xs, ys);
    for (let i = 0; i < n; i++) {
      push("step", k);
      push("time_s", k * BASE_CONFIG.dt);
      push("uav", i);
      push("informed", informedIds.includes(i) ? 1 : 0);
      push("fsm", 0);
      push("x", xs[i]!);
      push("y", ys[i]!);
      for (const c of ["vx", "vy", "nx", "ny", "cx", "cy"]) push(c, 0);
      push("target_uav", -1);
      push("target_x", NaN);
      push("target_y", NaN);
      push("omega", 0);
      push("min_pair_dist", stats.min);
      push("max_pair_dist", stats.max);
      push("mean_pair_dist", stats.mean);
      push("min_tree_dist", NaN);
      for (let j = 0; j < n; j++) {
        push(`est_x_${j}`, 0);
        push(`est_y_${j}`, 0);
      }
    }
  }

  return {
    header,
    columns,
    nRows: steps * n,
    summary: {
      completed: true,
      completion_step: steps,
      completion_time_s: steps * BASE_CONFIG.dt,
      n_records: steps,
      min_inter_agent: null,
      min_agent_tree: null,
      terminal_order: null,
    },
    config: { ...BASE_CONFIG, n_uavs: n, informed_ids: informedIds },
    forest: { seed: 0, area: { origin: [-25, -10], width: 50, height: 20 }, trees: [] },
  };
}
