"""Command-line entry points.

pacnav run     one mission (exit 0 completed, 2 incomplete, 1 error)
pacnav batch   N independently seeded missions (exit 0 only if all complete)
pacnav forest  generate a forest file or inspect an existing one

Scenarios come from a named preset or a JSON config file with the
ScenarioConfig fields; unknown keys are rejected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, ScenarioConfig, config_from_dict
from .environment import density, forest_to_dict, load_forest, save_forest
from .outputs import write_batch_outputs, write_outputs
from .presets import PRESET_NAMES, preset_config
from .simulation import forest_for_config, run_batch, run_mission


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=PRESET_NAMES, help="named scenario")
    p.add_argument("--config", type=Path, help="JSON scenario file")
    p.add_argument("--seed", type=int, help="override master seed")
    p.add_argument("--max-steps", type=int, help="override step budget")
    p.add_argument(
        "--trees", choices=("rho", "count"), default="rho",
        help="preset forest sizing: match density (rho) or nominal tree count",
    )
    p.add_argument("--out-dir", type=Path, help="write run artifacts here")
    p.add_argument("--quiet", action="store_true", help="suppress normal output")


def _load_scenario(args) -> ScenarioConfig:
    if args.config is not None and args.preset is not None:
        raise ConfigError("give either --preset or --config, not both")
    if args.config is not None:
        config = config_from_dict(json.loads(args.config.read_text()))
    else:
        config = preset_config(args.preset or "1a", tree_matching=args.trees)
    if args.seed is not None:
        config.master_seed = args.seed
    if args.max_steps is not None:
        config.max_steps = args.max_steps
        config.validate()
    return config


def _cmd_run(args) -> int:
    config = _load_scenario(args)
    log = run_mission(config)
    if args.out_dir is not None:
        write_outputs(log, args.out_dir)
    if not args.quiet:
        s = log.summary
        if s["completed"]:
            print(
                f"completed at step {s['completion_step']}"
                f" ({s['completion_time_s']:.1f} s)"
            )
        else:
            print(f"incomplete after {s['n_records']} steps")
        if s["min_inter_agent"] is not None:
            print(f"min inter-agent distance: {s['min_inter_agent']:.3f} m")
        if s["min_agent_tree"] is not None:
            print(f"min agent-tree distance: {s['min_agent_tree']:.3f} m")
    return 0 if log.summary["completed"] else 2


def _cmd_batch(args) -> int:
    config = _load_scenario(args)
    batch = run_batch(config, args.runs)
    if args.out_dir is not None:
        write_batch_outputs(batch, args.out_dir)
    agg = batch["aggregate"]
    if not args.quiet:
        print(f"completed {agg['n_completed']}/{agg['n_runs']} runs")
        mean_t = agg["completion_time_s"]["mean"]
        if mean_t is not None:
            print(f"mean completion time: {mean_t:.1f} s")
    return 0 if agg["n_completed"] == agg["n_runs"] else 2


def _cmd_forest(args) -> int:
    if (args.out is None) == (args.in_path is None):
        raise ConfigError("give exactly one of --out (generate) or --in (inspect)")
    if args.out is not None:
        config = _load_scenario(args)
        forest = forest_for_config(config)
        save_forest(forest, args.out)
        if not args.quiet:
            print(f"wrote {forest.n_trees} trees to {args.out}")
        return 0
    forest = load_forest(args.in_path)
    doc = forest_to_dict(forest)
    rho = density(forest.n_trees, 2.5, forest.area)
    if not args.quiet:
        print(f"trees: {forest.n_trees}")
        print(f"tree radius: {forest.tree_radius} m")
        print(
            f"area: {forest.width} x {forest.height} m"
            f" at origin ({doc['area']['origin'][0]}, {doc['area']['origin'][1]})"
        )
        print(f"density (r_o=2.5): {rho:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacnav",
        description="Decentralized swarm navigation missions in simulated forests",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one mission")
    _add_scenario_args(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_batch = sub.add_parser("batch", help="run N independently seeded missions")
    _add_scenario_args(p_batch)
    p_batch.add_argument("--runs", type=int, default=10, help="number of missions")
    p_batch.set_defaults(func=_cmd_batch)

    p_forest = sub.add_parser("forest", help="generate or inspect a forest file")
    _add_scenario_args(p_forest)
    p_forest.add_argument("--out", type=Path, help="write a generated forest here")
    p_forest.add_argument("--in", dest="in_path", type=Path, help="inspect this forest file")
    p_forest.set_defaults(func=_cmd_forest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
