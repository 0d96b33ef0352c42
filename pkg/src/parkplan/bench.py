"""Benchmark harness: guided vs unguided search on shared scenarios.

Per scenario, both planners run ``repetitions`` times over the same grid and
a pre-built heuristic field (field construction is shared by both planners
and therefore excluded from the timing; the report header says so). Wall
times are averaged over repetitions; node counts are deterministic per seed.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .geometry import VehicleGeometry
from .guidance import Dmap, GuidanceConfig, synthetic_oracle
from .guided import guided_plan
from .heuristic import build_holonomic_field
from .scenarios import ParkingScenario
from .search import PlannerConfig, plan

REPORT_HEADER = (
    "# guided-vs-unguided benchmark; wall times exclude heuristic-field "
    "construction (shared by both planners)"
)

CSV_COLUMNS = (
    "scenario_id,seed,unguided_solved,unguided_time,unguided_nodes,unguided_expanded,"
    "guided_solved,guided_time,guided_nodes,guided_expanded,time_ratio,node_ratio"
)


@dataclass(frozen=True)
class BenchRow:
    scenario_id: str
    seed: int
    unguided_solved: bool
    unguided_time: float
    unguided_nodes: int
    unguided_expanded: int
    guided_solved: bool
    guided_time: float
    guided_nodes: int
    guided_expanded: int

    @property
    def time_ratio(self) -> float:
        if not (self.unguided_solved and self.guided_solved) or self.unguided_time == 0:
            return math.nan
        return self.guided_time / self.unguided_time

    @property
    def node_ratio(self) -> float:
        if not (self.unguided_solved and self.guided_solved) or self.unguided_nodes == 0:
            return math.nan
        return self.guided_nodes / self.unguided_nodes

    def as_csv(self) -> str:
        return ",".join(
            [
                self.scenario_id,
                str(self.seed),
                str(int(self.unguided_solved)),
                f"{self.unguided_time:.6f}",
                str(self.unguided_nodes),
                str(self.unguided_expanded),
                str(int(self.guided_solved)),
                f"{self.guided_time:.6f}",
                str(self.guided_nodes),
                str(self.guided_expanded),
                f"{self.time_ratio:.4f}",
                f"{self.node_ratio:.4f}",
            ]
        )


def bench_scenario(
    scenario: ParkingScenario,
    gconfig: GuidanceConfig,
    dmap: Optional[Dmap] = None,
    repetitions: int = 5,
    cfg: Optional[PlannerConfig] = None,
    veh: VehicleGeometry = VehicleGeometry(),
    scenario_id: str = "",
) -> BenchRow:
    """Run both planners on one scenario. When ``dmap`` is None the synthetic
    oracle over the unguided solution is used as guidance."""
    if cfg is None:
        cfg = PlannerConfig()
    grid = scenario.grid()
    field = build_holonomic_field(grid, scenario.goal)

    unguided_times = []
    unguided = None
    for _ in range(repetitions):
        unguided = plan(scenario.start, scenario.goal, grid, veh, cfg, cost_field=field)
        unguided_times.append(unguided.stats.wall_time)

    if dmap is None and unguided.solved:
        dmap = synthetic_oracle(unguided.trajectory, grid=grid)

    guided_times = []
    guided = None
    if dmap is not None:
        for _ in range(repetitions):
            guided = guided_plan(
                scenario.start, scenario.goal, grid, veh, cfg, dmap, gconfig, cost_field=field
            )
            guided_times.append(guided.stats.wall_time)

    return BenchRow(
        scenario_id=scenario_id or f"seed{scenario.seed}",
        seed=scenario.seed,
        unguided_solved=unguided.solved,
        unguided_time=statistics.fmean(unguided_times),
        unguided_nodes=unguided.stats.open_list_inserted,
        unguided_expanded=unguided.stats.expanded,
        guided_solved=bool(guided and guided.solved),
        guided_time=statistics.fmean(guided_times) if guided_times else math.nan,
        guided_nodes=guided.stats.open_list_inserted if guided else 0,
        guided_expanded=guided.stats.expanded if guided else 0,
    )


def run_benchmark(
    scenarios: Sequence[ParkingScenario],
    gconfig: GuidanceConfig,
    dmaps: Optional[Sequence[Optional[Dmap]]] = None,
    repetitions: int = 5,
    cfg: Optional[PlannerConfig] = None,
    veh: VehicleGeometry = VehicleGeometry(),
    scenario_ids: Optional[Sequence[str]] = None,
) -> list[BenchRow]:
    rows = []
    for i, scenario in enumerate(scenarios):
        dmap = dmaps[i] if dmaps is not None else None
        sid = scenario_ids[i] if scenario_ids is not None else f"scene_{i:05d}"
        rows.append(
            bench_scenario(scenario, gconfig, dmap, repetitions, cfg, veh, scenario_id=sid)
        )
    return rows


def write_report_csv(rows: Sequence[BenchRow], path: str | Path) -> None:
    lines = [REPORT_HEADER, CSV_COLUMNS]
    lines += [row.as_csv() for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def summarize(rows: Sequence[BenchRow]) -> dict[str, float]:
    """Median ratios over rows where both planners solved."""
    node_ratios = [r.node_ratio for r in rows if not math.isnan(r.node_ratio)]
    time_ratios = [r.time_ratio for r in rows if not math.isnan(r.time_ratio)]
    return {
        "n_scenarios": float(len(rows)),
        "n_both_solved": float(len(node_ratios)),
        "median_node_ratio": statistics.median(node_ratios) if node_ratios else math.nan,
        "median_time_ratio": statistics.median(time_ratios) if time_ratios else math.nan,
    }


def format_table(rows: Sequence[BenchRow]) -> str:
    """Human-readable fixed-width summary table."""
    header = f"{'scenario':<14}{'u-time':>9}{'u-nodes':>9}{'g-time':>9}{'g-nodes':>9}{'t-ratio':>9}{'n-ratio':>9}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.scenario_id:<14}{r.unguided_time:>9.4f}{r.unguided_nodes:>9d}"
            f"{r.guided_time:>9.4f}{r.guided_nodes:>9d}{r.time_ratio:>9.3f}{r.node_ratio:>9.3f}"
        )
    summary = summarize(rows)
    lines.append("-" * len(header))
    lines.append(
        f"median ratios over {int(summary['n_both_solved'])} solved scenarios: "
        f"time {summary['median_time_ratio']:.3f}, nodes {summary['median_node_ratio']:.3f}"
    )
    return "\n".join(lines)
