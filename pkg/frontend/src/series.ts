/**
 * Series math over run datasets: moving averages and the pairwise
 * distance envelope recomputed from raw positions.
 *
 * The envelope arithmetic mirrors the harness's accumulation order
 * operation for operation, so a recomputed value equals the recorded
 * column exactly, not just approximately.
 */

import { RunDataset, perAgent, perStep, stepCount } from "./dataset.js";

/** Trailing simple moving average; out[i] covers values[i-n+1 .. i].
 * Window 1 returns the input values unchanged. */
export function movingAverage(values: number[], window: number): number[] {
  if (window <= 0 || !Number.isInteger(window)) {
    throw new RangeError(`window must be a positive integer, got ${window}`);
  }
  if (values.length < window) return [];
  if (window === 1) return values.slice();
  const out: number[] = [];
  for (let i = window - 1; i < values.length; i++) {
    let sum = 0;
    for (let m = i - window + 1; m <= i; m++) sum += values[m]!;
    out.push(sum / window);
  }
  return out;
}

export interface PairStats {
  min: number;
  max: number;
  mean: number;
}

/** Min/max/mean over all unordered pairs, in the harness's exact
 * iteration and accumulation order. */
export function pairDistanceStats(xs: number[], ys: number[]): PairStats {
  const n = xs.length;
  if (n < 2) return { min: NaN, max: NaN, mean: NaN };
  let dmin = Infinity;
  let dmax = -Infinity;
  let total = 0;
  let count = 0;
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const dx = xs[i]! - xs[j]!;
      const dy = ys[i]! - ys[j]!;
      const d = Math.sqrt(dx * dx + dy * dy);
      if (d < dmin) dmin = d;
      if (d > dmax) dmax = d;
      total += d;
      count += 1;
    }
  }
  return { min: dmin, max: dmax, mean: total / count };
}

export interface Envelope {
  time: number[];
  min: number[];
  max: number[];
  mean: number[];
}

/** Per-step distance envelope recomputed from the logged positions. */
export function distanceEnvelope(data: RunDataset): Envelope {
  const n = data.config.n_uavs;
  if (n < 2) throw new RangeError("distance envelope needs at least 2 agents");
  const steps = stepCount(data);
  const xsByAgent = [];
  const ysByAgent = [];
  for (let i = 0; i < n; i++) {
    xsByAgent.push(perAgent(data, "x", i));
    ysByAgent.push(perAgent(data, "y", i));
  }
  const env: Envelope = { time: perStep(data, "time_s"), min: [], max: [], mean: [] };
  const xs = new Array<number>(n);
  const ys = new Array<number>(n);
  for (let s = 0; s < steps; s++) {
    for (let i = 0; i < n; i++) {
      xs[i] = xsByAgent[i]![s]!;
      ys[i] = ysByAgent[i]![s]!;
    }
    const stats = pairDistanceStats(xs, ys);
    env.min.push(stats.min);
    env.max.push(stats.max);
    env.mean.push(stats.mean);
  }
  return env;
}

/** The recorded envelope columns, for cross-checking the recomputation. */
export function recordedEnvelope(data: RunDataset): Envelope {
  return {
    time: perStep(data, "time_s"),
    min: perStep(data, "min_pair_dist"),
    max: perStep(data, "max_pair_dist"),
    mean: perStep(data, "mean_pair_dist"),
  };
}

export interface Trajectory {
  uav: number;
  informed: boolean;
  x: number[];
  y: number[];
}

export function trajectories(data: RunDataset): Trajectory[] {
  const informed = new Set(data.config.informed_ids);
  const out: Trajectory[] = [];
  for (let i = 0; i < data.config.n_uavs; i++) {
    out.push({
      uav: i,
      informed: informed.has(i),
      x: perAgent(data, "x", i),
      y: perAgent(data, "y", i),
    });
  }
  return out;
}

/** Index of the recorded step closest to a wall-clock time. */
export function stepIndexAt(time: number[], t: number): number {
  if (time.length === 0) throw new RangeError("empty time series");
  const first = time[0]!;
  const last = time[time.length - 1]!;
  if (t < first || t > last) {
    throw new RangeError(`mark time ${t} s outside mission [${first}, ${last}] s`);
  }
  let best = 0;
  let bestErr = Infinity;
  for (let i = 0; i < time.length; i++) {
    const err = Math.abs(time[i]! - t);
    if (err < bestErr) {
      bestErr = err;
      best = i;
    }
  }
  return best;
}
