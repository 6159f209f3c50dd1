export {
  SchemaError,
  expectedHeader,
  loadRunDir,
  parseTimeseries,
  perAgent,
  perStep,
  stepCount,
} from "./dataset.js";
export type { ConfigDoc, ForestDoc, RunDataset, SummaryDoc } from "./dataset.js";
export {
  distanceEnvelope,
  movingAverage,
  pairDistanceStats,
  recordedEnvelope,
  stepIndexAt,
  trajectories,
} from "./series.js";
export type { Envelope, PairStats, Trajectory } from "./series.js";
export {
  renderDistanceEnvelope,
  renderOrder,
  renderTrajectories,
} from "./charts.js";
export type { ChartSize } from "./charts.js";
