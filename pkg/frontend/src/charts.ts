/**
 * SVG chart rendering (echarts in SSR mode, no DOM needed): distance
 * envelope, order series with moving average, 2D trajectories.
 */

import * as echarts from "echarts";
import { perStep, RunDataset } from "./dataset.js";
import {
  distanceEnvelope,
  movingAverage,
  stepIndexAt,
  trajectories,
} from "./series.js";

export interface ChartSize {
  width?: number;
  height?: number;
}

function renderOption(
  option: echarts.EChartsOption,
  width: number,
  height: number
): string {
  const chart = echarts.init(null, null, { renderer: "svg", ssr: true, width, height });
  chart.setOption(option);
  const svg = chart.renderToSVGString();
  chart.dispose();
  return svg;
}

function zip(xs: number[], ys: number[]): [number, number][] {
  return xs.map((x, i) => [x, ys[i]!]);
}

export function renderDistanceEnvelope(data: RunDataset, size: ChartSize = {}): string {
  const env = distanceEnvelope(data);
  const band = env.max.map((v, i) => v - env.min[i]!);
  const rF = data.config.r_f;
  const rO = data.config.r_o;
  const option: echarts.EChartsOption = {
    animation: false,
    title: { text: "Inter-agent distance envelope" },
    legend: { data: ["mean", "min-max band"], top: 28 },
    xAxis: { type: "value", name: "time [s]" },
    yAxis: { type: "value", name: "distance [m]" },
    series: [
      {
        name: "band-floor",
        type: "line",
        data: zip(env.time, env.min),
        stack: "band",
        lineStyle: { opacity: 0 },
        symbol: "none",
        silent: true,
      },
      {
        name: "min-max band",
        type: "line",
        data: zip(env.time, band),
        stack: "band",
        lineStyle: { opacity: 0 },
        areaStyle: { color: "#9ecae1", opacity: 0.6 },
        symbol: "none",
      },
      {
        name: "mean",
        type: "line",
        data: zip(env.time, env.mean),
        symbol: "none",
        lineStyle: { width: 2, color: "#08519c" },
        markLine: {
          silent: true,
          symbol: "none",
          lineStyle: { type: "dashed", color: "#636363" },
          label: { formatter: "{b}" },
          data: [
            { name: `r_f = ${rF} m`, yAxis: rF },
            { name: `r_o = ${rO} m`, yAxis: rO },
          ],
        },
      },
    ],
  };
  return renderOption(option, size.width ?? 900, size.height ?? 500);
}

export function renderOrder(data: RunDataset, window: number, size: ChartSize = {}): string {
  const time = perStep(data, "time_s");
  const raw = perStep(data, "omega");
  const averaged = movingAverage(raw, window);
  const avgTime = time.slice(window - 1);
  const option: echarts.EChartsOption = {
    animation: false,
    title: { text: `Order, moving average window ${window}` },
    legend: { data: ["raw", "moving average"], top: 28 },
    xAxis: { type: "value", name: "time [s]" },
    yAxis: { type: "value", name: "order", min: -1, max: 1 },
    series: [
      {
        name: "raw",
        type: "line",
        data: zip(time, raw),
        symbol: "none",
        lineStyle: { type: "dashed", width: 1, color: "#9e9ac8" },
      },
      {
        name: "moving average",
        type: "line",
        data: zip(avgTime, averaged),
        symbol: "none",
        lineStyle: { width: 2, color: "#54278f" },
      },
    ],
  };
  return renderOption(option, size.width ?? 900, size.height ?? 500);
}

function circlePoints(cx: number, cy: number, r: number, n = 128): [number, number][] {
  const pts: [number, number][] = [];
  for (let i = 0; i <= n; i++) {
    const a = (2 * Math.PI * i) / n;
    pts.push([cx + r * Math.cos(a), cy + r * Math.sin(a)]);
  }
  return pts;
}

const MARK_SYMBOLS = ["triangle", "circle", "diamond", "rect", "pin"];

export function renderTrajectories(
  data: RunDataset,
  markTimes: number[],
  size: ChartSize = {}
): string {
  const trajs = trajectories(data);
  const time = perStep(data, "time_s");
  const series: echarts.SeriesOption[] = [];

  for (const traj of trajs) {
    series.push({
      name: `uav ${traj.uav}${traj.informed ? " (informed)" : ""}`,
      type: "line",
      data: zip(traj.x, traj.y),
      symbol: "none",
      lineStyle: { width: 2, type: traj.informed ? "solid" : "dashed" },
    });
  }
  markTimes.forEach((t, m) => {
    const idx = stepIndexAt(time, t);
    series.push({
      name: `t = ${t} s`,
      type: "scatter",
      data: trajs.map((traj) => [traj.x[idx]!, traj.y[idx]!]),
      symbol: MARK_SYMBOLS[m % MARK_SYMBOLS.length],
      symbolSize: 12,
      itemStyle: { color: "#252525" },
    });
  });
  series.push({
    name: "trees",
    type: "scatter",
    data: data.forest.trees.map(([x, y]) => [x, y]),
    symbol: "circle",
    symbolSize: 6,
    itemStyle: { color: "#a1d99b" },
    silent: true,
  });
  const [gx, gy] = data.config.goal;
  series.push({
    name: "goal region",
    type: "line",
    data: circlePoints(gx, gy, data.config.goal_radius),
    symbol: "none",
    lineStyle: { type: "dotted", color: "#de2d26" },
    silent: true,
  });

  const option: echarts.EChartsOption = {
    animation: false,
    title: { text: "Trajectories" },
    legend: { top: 28, data: trajs.map((t) => `uav ${t.uav}${t.informed ? " (informed)" : ""}`) },
    xAxis: { type: "value", name: "x [m]", scale: true },
    yAxis: { type: "value", name: "y [m]", scale: true },
    series,
  };
  return renderOption(option, size.width ?? 760, size.height ?? 760);
}
