"""Kinodynamic best-first search over continuous states deduplicated on a
coarse (x, y, heading) grid, with an optional per-successor expansion filter.

The open list is a binary min-heap with lazy deletion: replaced or finalized
entries are detected at extraction time and skipped. Ordering is (c + h),
ties broken by lower c, then insertion order, so runs are fully deterministic
for identical inputs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import NamedTuple, Optional, Protocol, Sequence

from .collision import is_collide
from .errors import InvalidScenarioError, OutOfBoundsError
from .geometry import TWO_PI, Pose, VehicleGeometry
from .heuristic import CostField, build_holonomic_field, h
from .kinematics import Action, StepConfig, action_set, transition
from .rasters import OccupancyGrid


class CellIndex(NamedTuple):
    """Deduplication cell: XY bins plus a heading bin in [0, n_theta_bins)."""

    ix: int
    iy: int
    itheta: int


@dataclass
class Node:
    """Search-tree element {state, action, path cost, heuristic, parent}."""

    state: Pose
    action: Optional[Action]
    cost: float
    heuristic: float
    parent: Optional["Node"]


class TrajectoryStep(NamedTuple):
    pose: Pose
    action: Optional[Action]  # None on the start pose


@dataclass(frozen=True)
class Trajectory:
    """Start-to-goal pose sequence with the action that produced each pose."""

    steps: tuple[TrajectoryStep, ...]
    cost: float

    @property
    def poses(self) -> list[Pose]:
        return [step.pose for step in self.steps]


@dataclass
class SearchStats:
    wall_time: float = 0.0
    open_list_peak: int = 0
    open_list_inserted: int = 0
    expanded: int = 0
    solved: bool = False


class ExpansionFilter(Protocol):
    """Per-successor veto consulted before collision checking."""

    def should_prune(self, state: Pose) -> bool: ...


@dataclass(frozen=True)
class PlannerConfig:
    """Search discretization, step costs, and budget limits."""

    step: StepConfig = field(default_factory=StepConfig)
    xy_bin: float = 2.0
    theta_bin: float = math.radians(15.0)
    reverse_multiplier: float = 2.0  # step-cost factor for reverse motion
    switch_penalty: float = 2.0  # meters added on a direction change
    actions: tuple[Action, ...] = None  # type: ignore[assignment]
    max_expansions: Optional[int] = None
    time_budget: Optional[float] = None  # seconds

    def __post_init__(self) -> None:
        if self.actions is None:
            object.__setattr__(self, "actions", tuple(action_set()))
        if self.xy_bin <= 0 or self.theta_bin <= 0:
            raise ValueError("bin sizes must be positive")

    @property
    def n_theta_bins(self) -> int:
        return max(1, int(round(TWO_PI / self.theta_bin)))

    def arc_length_only(self) -> "PlannerConfig":
        """Copy with motion penalties disabled (step cost = pure arc length)."""
        return PlannerConfig(
            step=self.step,
            xy_bin=self.xy_bin,
            theta_bin=self.theta_bin,
            reverse_multiplier=1.0,
            switch_penalty=0.0,
            actions=self.actions,
            max_expansions=self.max_expansions,
            time_budget=self.time_budget,
        )

    def step_cost(self, a: Action, parent_action: Optional[Action]) -> float:
        cost = self.step.d * (self.reverse_multiplier if a.dir < 0 else 1.0)
        if parent_action is not None and parent_action.dir != a.dir:
            cost += self.switch_penalty
        return cost


@dataclass(frozen=True)
class PlanResult:
    trajectory: Optional[Trajectory]
    failure: Optional[str]  # None | "no-path" | "budget"
    stats: SearchStats

    @property
    def solved(self) -> bool:
        return self.trajectory is not None


def discretize(state: Pose, grid: OccupancyGrid, cfg: PlannerConfig) -> CellIndex:
    """Floor-division binning of a state; heading binned on [0, 2*pi)."""
    if not grid.contains_point(state.x, state.y):
        raise OutOfBoundsError(f"state {state} outside the world")
    ix = int(math.floor(state.x / cfg.xy_bin))
    iy = int(math.floor(state.y / cfg.xy_bin))
    theta = state.theta % TWO_PI
    itheta = min(int(math.floor(theta / cfg.theta_bin)), cfg.n_theta_bins - 1)
    return CellIndex(ix, iy, itheta)


def backtrack(goal_node: Node) -> Trajectory:
    """Walk the parent chain into a start-to-goal trajectory."""
    steps: list[TrajectoryStep] = []
    node: Optional[Node] = goal_node
    seen: set[int] = set()
    while node is not None:
        assert id(node) not in seen, "cyclic parent chain"
        seen.add(id(node))
        steps.append(TrajectoryStep(node.state, node.action))
        node = node.parent
    steps.reverse()
    assert steps[0].action is None, "root node must carry no action"
    return Trajectory(tuple(steps), goal_node.cost)


def plan(
    start: Pose,
    goal: Pose,
    grid: OccupancyGrid,
    veh: VehicleGeometry,
    cfg: PlannerConfig,
    expansion_filter: Optional[ExpansionFilter] = None,
    cost_field: Optional[CostField] = None,
) -> PlanResult:
    """Best-first kinodynamic search from start to the goal's cell.

    The optional ``cost_field`` lets callers amortize heuristic construction
    across runs that share (grid, goal); benchmark timing relies on this.
    """
    if is_collide(start, grid, veh):
        raise InvalidScenarioError("start pose is in collision")
    if is_collide(goal, grid, veh):
        raise InvalidScenarioError("goal pose is in collision")
    if cost_field is None:
        cost_field = build_holonomic_field(grid, goal)

    stats = SearchStats()
    t0 = time.perf_counter()

    goal_cell = discretize(goal, grid, cfg)
    root = Node(start, None, 0.0, h(start, cost_field, goal), None)
    counter = 0
    # heap entries: (f, c, insertion order, node); open_best maps a cell to
    # the cost of its only live entry (stale entries skipped at pop time).
    heap: list[tuple[float, float, int, Node]] = []
    open_best: dict[CellIndex, float] = {}
    closed: set[CellIndex] = set()

    def push(node: Node, cell: CellIndex) -> None:
        nonlocal counter
        heappush(heap, (node.cost + node.heuristic, node.cost, counter, node))
        counter += 1
        open_best[cell] = node.cost
        stats.open_list_inserted += 1
        stats.open_list_peak = max(stats.open_list_peak, len(open_best))

    def finish(trajectory: Optional[Trajectory], failure: Optional[str]) -> PlanResult:
        stats.wall_time = time.perf_counter() - t0
        stats.solved = trajectory is not None
        return PlanResult(trajectory, failure, stats)

    push(root, discretize(start, grid, cfg))

    while heap:
        _, _, _, node = heappop(heap)
        cell = discretize(node.state, grid, cfg)
        if cell in closed or open_best.get(cell) != node.cost:
            continue  # stale entry (finalized or replaced)
        del open_best[cell]
        closed.add(cell)
        stats.expanded += 1

        if cell == goal_cell:
            return finish(backtrack(node), None)
        if cfg.max_expansions is not None and stats.expanded >= cfg.max_expansions:
            return finish(None, "budget")
        if cfg.time_budget is not None and time.perf_counter() - t0 > cfg.time_budget:
            return finish(None, "budget")

        for a in cfg.actions:
            successor = transition(node.state, a, cfg.step)
            if expansion_filter is not None and expansion_filter.should_prune(successor):
                continue
            if is_collide(successor, grid, veh):
                continue
            succ_cell = discretize(successor, grid, cfg)
            if succ_cell in closed:
                continue
            succ_cost = node.cost + cfg.step_cost(a, node.action)
            best = open_best.get(succ_cell)
            if best is not None and best <= succ_cost:
                continue
            child = Node(successor, a, succ_cost, h(successor, cost_field, goal), node)
            push(child, succ_cell)

    return finish(None, "no-path")
