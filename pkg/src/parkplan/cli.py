"""Command-line interface.

Subcommands:

* ``gen-data``: sample scenarios and export the expert dataset.
* ``plan``: solve one exported scenario, optionally with guidance.
* ``bench``: guided-vs-unguided comparison over a dataset directory; writes
  a CSV report, a text table, and a ratio figure next to the CSV.
* ``render``: draw a scenario (and optional trajectory) to PGM and PNG.

All randomness flows from the explicit ``--seed`` arguments.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import format_table, run_benchmark, write_report_csv
from .geometry import Pose, VehicleGeometry
from .guidance import GuidanceConfig, load_dmap, synthetic_oracle
from .guided import guided_plan
from .scenarios import (
    generate_dataset,
    load_scenario,
    load_trajectory_csv,
    save_trajectory_csv,
)
from .search import PlannerConfig, plan


def _scene_dirs(root: Path) -> list[Path]:
    dirs = sorted(p for p in root.iterdir() if p.is_dir() and (p / "scenario.txt").exists())
    if not dirs:
        raise SystemExit(f"no scenario directories under {root}")
    return dirs


def _cmd_gen_data(args: argparse.Namespace) -> int:
    written = generate_dataset(args.out, args.count, args.seed)
    print(f"wrote {len(written)} scenarios to {args.out}")
    return 0


def _apply_pose_override(pose: Pose, spec: str | None) -> Pose:
    if spec is None:
        return pose
    x, y, theta_deg = (float(v) for v in spec.split(","))
    import math

    return Pose.of(x, y, math.radians(theta_deg))


def _cmd_plan(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    start = _apply_pose_override(scenario.start, args.start)
    goal = _apply_pose_override(scenario.goal, args.goal)
    grid = scenario.grid()
    veh = VehicleGeometry()
    cfg = PlannerConfig()

    if args.dmap or args.oracle:
        if args.oracle:
            baseline = plan(start, goal, grid, veh, cfg)
            if not baseline.solved:
                print(f"unguided baseline failed: {baseline.failure}", file=sys.stderr)
                return 1
            dmap = synthetic_oracle(baseline.trajectory, grid=grid)
        else:
            dmap = load_dmap(args.dmap, resolution=grid.resolution)
        gconfig = GuidanceConfig(tau=args.tau, p_guided=args.p_guided, seed=args.seed)
        result = guided_plan(start, goal, grid, veh, cfg, dmap, gconfig)
    else:
        result = plan(start, goal, grid, veh, cfg)

    stats = result.stats
    print(
        f"solved={result.solved} failure={result.failure} "
        f"time={stats.wall_time:.4f}s inserted={stats.open_list_inserted} "
        f"expanded={stats.expanded} peak={stats.open_list_peak}"
    )
    if not result.solved:
        return 1
    save_trajectory_csv(result.trajectory, args.out)
    print(f"cost={result.trajectory.cost:.3f} -> {args.out}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    dirs = _scene_dirs(Path(args.scenarios))
    scenarios = [load_scenario(d) for d in dirs]
    ids = [d.name for d in dirs]
    dmaps = None
    if args.guidance != "oracle":
        dmap_dir = Path(args.guidance)
        dmaps = [
            load_dmap(dmap_dir / f"{d.name}.dmap", resolution=s.layout.resolution)
            for d, s in zip(dirs, scenarios)
        ]
    gconfig = GuidanceConfig(tau=args.tau, p_guided=args.p_guided, seed=args.seed)
    rows = run_benchmark(scenarios, gconfig, dmaps, repetitions=args.reps, scenario_ids=ids)
    out = Path(args.out)
    write_report_csv(rows, out)
    from .plots import render_bench_figure

    figure = render_bench_figure(rows, out.with_suffix(".png"))
    print(format_table(rows))
    print(f"report: {out}  figure: {figure}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    grid = scenario.grid()
    trajectories = [load_trajectory_csv(args.traj)] if args.traj else []
    from .plots import render_scenario_figure, render_scenario_pgm

    out = Path(args.out)
    render_scenario_pgm(grid, trajectories, out)
    png = render_scenario_figure(
        grid, trajectories, veh=VehicleGeometry(), out_path=out.with_suffix(".png"),
        title=out.stem,
    )
    print(f"wrote {out} and {png}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parkplan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="generate the scenario/expert dataset")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("plan", help="plan on one exported scenario")
    p.add_argument("--scenario", required=True, help="scenario directory")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dmap", help="DMAP guidance file")
    group.add_argument("--oracle", action="store_true", help="synthetic-oracle guidance")
    p.add_argument("--tau", type=float, default=0.1)
    p.add_argument("--p-guided", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", help="override start pose as x,y,theta_deg")
    p.add_argument("--goal", help="override goal pose as x,y,theta_deg")
    p.add_argument("--out", default="traj.csv")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("bench", help="guided-vs-unguided benchmark")
    p.add_argument("--scenarios", required=True, help="dataset directory")
    p.add_argument("--guidance", default="oracle", help='"oracle" or a DMAP directory')
    p.add_argument("--tau", type=float, default=0.1)
    p.add_argument("--p-guided", type=float, default=0.8)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="report.csv")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("render", help="render a scenario to PGM and PNG")
    p.add_argument("--scenario", required=True)
    p.add_argument("--traj", help="trajectory CSV to overlay")
    p.add_argument("--out", default="scene.pgm")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
