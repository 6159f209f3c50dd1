"""Run artifacts on disk: time-series CSV, summary JSON, forest JSON.

Formatting is byte-stable: floats are written with repr (shortest
round-trip form), dict keys are sorted, so reruns with equal seeds
produce identical files and downstream tools can parse values back to
the exact same doubles.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .config import ScenarioConfig, config_to_dict
from .environment import forest_to_dict
from .simulation import MissionLog

TIMESERIES_NAME = "timeseries.csv"
SUMMARY_NAME = "summary.json"
FOREST_NAME = "forest.json"


def _fmt(v: float) -> str:
    return repr(float(v))


def timeseries_header(n_uavs: int) -> list[str]:
    cols = [
        "step", "time_s", "uav", "informed", "fsm",
        "x", "y", "vx", "vy", "nx", "ny", "cx", "cy",
        "target_uav", "target_x", "target_y",
        "omega", "min_pair_dist", "max_pair_dist", "mean_pair_dist", "min_tree_dist",
    ]
    for j in range(n_uavs):
        cols += [f"est_x_{j}", f"est_y_{j}"]
    return cols


def timeseries_rows(log: MissionLog):
    """One row per step per agent, agents in id order within a step."""
    n = log.config.n_uavs
    dt = log.config.dt
    informed = set(log.config.informed_ids)
    for s in range(log.n_records):
        k = int(log.steps[s])
        shared = [
            _fmt(log.omega[s]), _fmt(log.min_pair[s]), _fmt(log.max_pair[s]),
            _fmt(log.mean_pair[s]), _fmt(log.min_tree[s]),
        ]
        for i in range(n):
            row = [
                str(k), _fmt(k * dt), str(i), str(int(i in informed)),
                str(int(log.fsm[s, i])),
                _fmt(log.pos[s, i, 0]), _fmt(log.pos[s, i, 1]),
                _fmt(log.vel[s, i, 0]), _fmt(log.vel[s, i, 1]),
                _fmt(log.nav[s, i, 0]), _fmt(log.nav[s, i, 1]),
                _fmt(log.col[s, i, 0]), _fmt(log.col[s, i, 1]),
                str(int(log.target_id[s, i])),
                _fmt(log.target_pos[s, i, 0]), _fmt(log.target_pos[s, i, 1]),
                *shared,
            ]
            for j in range(n):
                row += [_fmt(log.estimates[s, i, j, 0]), _fmt(log.estimates[s, i, j, 1])]
            yield row


def _jsonable(value):
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def summary_document(log: MissionLog) -> dict:
    return _jsonable(
        {
            "summary": log.summary,
            "config": config_to_dict(log.config),
        }
    )


def write_outputs(log: MissionLog, out_dir: str | Path) -> dict[str, Path]:
    """Write timeseries.csv, summary.json and forest.json into out_dir."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        ts_path = out / TIMESERIES_NAME
        with ts_path.open("w", newline="\n") as fh:
            fh.write(",".join(timeseries_header(log.config.n_uavs)) + "\n")
            for row in timeseries_rows(log):
                fh.write(",".join(row) + "\n")
        summary_path = out / SUMMARY_NAME
        summary_path.write_text(
            json.dumps(summary_document(log), indent=2, sort_keys=True) + "\n"
        )
        forest_path = out / FOREST_NAME
        forest_path.write_text(
            json.dumps(forest_to_dict(log.forest), indent=2, sort_keys=True) + "\n"
        )
    except OSError as exc:
        raise OSError(f"failed writing outputs under {out}: {exc}") from exc
    return {"timeseries": ts_path, "summary": summary_path, "forest": forest_path}


def write_batch_outputs(batch: dict, out_dir: str | Path) -> Path:
    """Write per-run directories (run_000, ...) plus batch_summary.json."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for run, log in zip(batch["runs"], batch["logs"]):
            write_outputs(log, out / f"run_{run['run']:03d}")
        doc = _jsonable({"runs": batch["runs"], "aggregate": batch["aggregate"]})
        path = out / "batch_summary.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing outputs under {out}: {exc}") from exc
    return out / "batch_summary.json"
