"""Parking-lot scenario generation and the on-disk dataset layout.

The lot is a walled rectangle with two facing rows of perpendicular bays
along the north and south walls; a random subset of bays holds parked-car
obstacles. Starts are rejection-sampled in free space with heading 0 or 180
degrees; the goal sits centered in a randomly chosen empty bay with heading
-90 or +90 degrees.

Dataset layout (one directory per scenario)::

    scene_00042/
      condition.pras     condition image (values 0..3)
      label.pras         binary union of the expert trajectories
      traj_0.csv ...     x,y,theta,steer,dir per row (blank action on row 0)
      scenario.txt       key = value metadata (layout, poses, seeds, costs)
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidScenarioError, ParkplanError
from .geometry import Pose, VehicleGeometry
from .heuristic import build_holonomic_field
from .kinematics import Action, action_set
from .rasters import LabelImage, OccupancyGrid, SceneImage, load_pras, save_pras
from .scene import rasterize_condition, rasterize_trajectories
from .search import PlannerConfig, Trajectory, TrajectoryStep, plan

MAX_SAMPLE_ATTEMPTS = 10_000


class ExpertSetError(ParkplanError):
    """A scenario could not produce the full expert-trajectory set."""


class Bay(NamedTuple):
    """Axis-aligned bay rectangle; row is "south" or "north"."""

    row: str
    index: int
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def center(self) -> tuple[float, float]:
        return (self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass(frozen=True)
class LotLayout:
    """Parameterized parking-lot geometry, all lengths in meters."""

    lot_width: float = 25.0
    lot_height: float = 15.0
    resolution: float = 0.1
    wall_thickness: float = 0.2
    bay_width: float = 2.5
    bay_depth: float = 5.0
    bays_per_row: int = 9
    car_length: float = 4.5
    car_width: float = 1.9
    bay_fill_prob: float = 0.5

    def bays(self) -> list[Bay]:
        usable = self.lot_width - 2 * self.wall_thickness
        margin = self.wall_thickness + (usable - self.bays_per_row * self.bay_width) / 2.0
        south_y0 = self.wall_thickness
        north_y1 = self.lot_height - self.wall_thickness
        out = []
        for i in range(self.bays_per_row):
            x0 = margin + i * self.bay_width
            out.append(Bay("south", i, x0, south_y0, x0 + self.bay_width, south_y0 + self.bay_depth))
        for i in range(self.bays_per_row):
            x0 = margin + i * self.bay_width
            out.append(
                Bay("north", self.bays_per_row + i, x0, north_y1 - self.bay_depth, x0 + self.bay_width, north_y1)
            )
        return out

    def grid_shape(self) -> tuple[int, int]:
        return (
            int(round(self.lot_height / self.resolution)),
            int(round(self.lot_width / self.resolution)),
        )


def _fill_rect(cells: np.ndarray, res: float, x0: float, y0: float, x1: float, y1: float) -> None:
    """Mark as obstacle every pixel whose center lies inside the rectangle."""
    height, width = cells.shape
    col0 = max(0, int(math.ceil(x0 / res - 0.5)))
    col1 = min(width - 1, int(math.floor(x1 / res - 0.5)))
    row0 = max(0, int(math.ceil(y0 / res - 0.5)))
    row1 = min(height - 1, int(math.floor(y1 / res - 0.5)))
    if col0 <= col1 and row0 <= row1:
        cells[row0 : row1 + 1, col0 : col1 + 1] = 1


@dataclass(frozen=True)
class ParkingScenario:
    """One sampled parking task: layout, occupied bays, start and goal."""

    layout: LotLayout
    occupied_bays: tuple[int, ...]
    goal_bay: int
    start: Pose
    goal: Pose
    seed: int

    def grid(self) -> OccupancyGrid:
        return _build_grid(self.layout, self.occupied_bays)

    def condition_image(self) -> SceneImage:
        return rasterize_condition(self.grid(), self.start, self.goal)


@functools.lru_cache(maxsize=128)
def _build_grid(layout: LotLayout, occupied_bays: tuple[int, ...]) -> OccupancyGrid:
    height, width = layout.grid_shape()
    cells = np.zeros((height, width), dtype=np.uint8)
    res = layout.resolution
    w, h, t = layout.lot_width, layout.lot_height, layout.wall_thickness
    _fill_rect(cells, res, 0.0, 0.0, w, t)  # south wall
    _fill_rect(cells, res, 0.0, h - t, w, h)  # north wall
    _fill_rect(cells, res, 0.0, 0.0, t, h)  # west wall
    _fill_rect(cells, res, w - t, 0.0, w, h)  # east wall
    bays = layout.bays()
    for idx in occupied_bays:
        bay = bays[idx]
        cx, cy = bay.center
        _fill_rect(
            cells,
            res,
            cx - layout.car_width / 2.0,
            cy - layout.car_length / 2.0,
            cx + layout.car_width / 2.0,
            cy + layout.car_length / 2.0,
        )
    return OccupancyGrid(cells, res)


def goal_pose_for_bay(bay: Bay, heading: float, veh: VehicleGeometry) -> Pose:
    """Rear-axle pose that centers the vehicle body in the bay at ``heading``."""
    cx, cy = bay.center
    setback = veh.body_length / 2.0 - veh.rear_overhang
    return Pose.of(cx - setback * math.cos(heading), cy - setback * math.sin(heading), heading)


def sample_scenario(
    seed: int,
    layout: LotLayout = LotLayout(),
    veh: VehicleGeometry = VehicleGeometry(),
) -> ParkingScenario:
    """Deterministically sample one scenario from ``seed``."""
    from .collision import is_collide

    rng = np.random.default_rng(seed)
    bays = layout.bays()
    occupied_mask = rng.random(len(bays)) < layout.bay_fill_prob
    if occupied_mask.all():
        occupied_mask[int(rng.integers(len(bays)))] = False
    empty = [b.index for b in bays if not occupied_mask[b.index]]
    goal_bay = empty[int(rng.integers(len(empty)))]
    goal_heading = math.pi / 2.0 if rng.random() < 0.5 else -math.pi / 2.0
    occupied = tuple(int(i) for i in np.nonzero(occupied_mask)[0])

    grid = _build_grid(layout, occupied)
    goal = goal_pose_for_bay(bays[goal_bay], goal_heading, veh)
    if is_collide(goal, grid, veh):
        raise InvalidScenarioError(f"goal pose {goal} collides; layout too tight")

    for _ in range(MAX_SAMPLE_ATTEMPTS):
        x = float(rng.uniform(0.0, layout.lot_width))
        y = float(rng.uniform(0.0, layout.lot_height))
        theta = 0.0 if rng.random() < 0.5 else math.pi
        start = Pose.of(x, y, theta)
        if not is_collide(start, grid, veh):
            return ParkingScenario(layout, occupied, goal_bay, start, goal, seed)
    raise InvalidScenarioError(f"no collision-free start found in {MAX_SAMPLE_ATTEMPTS} attempts")


@dataclass(frozen=True)
class SceneRecord:
    """A scenario plus its condition image, label image, and expert set."""

    scenario: ParkingScenario
    condition: SceneImage
    label: LabelImage
    trajectories: tuple[Trajectory, ...]


def generate_expert_set(
    scenario: ParkingScenario,
    cfg: Optional[PlannerConfig] = None,
    veh: VehicleGeometry = VehicleGeometry(),
    n_trajectories: int = 5,
) -> SceneRecord:
    """Solve the scenario ``n_trajectories`` times, each with an independently
    shuffled action order (shuffling changes tie-breaking, hence the path)."""
    if cfg is None:
        cfg = PlannerConfig()
    grid = scenario.grid()
    field = build_holonomic_field(grid, scenario.goal)
    trajectories = []
    for k in range(n_trajectories):
        shuffle_rng = np.random.default_rng([abs(scenario.seed), k])
        actions = action_set()
        shuffle_rng.shuffle(actions)
        run_cfg = replace(cfg, actions=tuple(actions))
        result = plan(scenario.start, scenario.goal, grid, veh, run_cfg, cost_field=field)
        if not result.solved:
            raise ExpertSetError(f"expert run {k} failed with {result.failure}")
        trajectories.append(result.trajectory)
    condition = rasterize_condition(grid, scenario.start, scenario.goal)
    label = rasterize_trajectories(trajectories, grid)
    return SceneRecord(scenario, condition, label, tuple(trajectories))


# ---------------------------------------------------------------------------
# On-disk layout
# ---------------------------------------------------------------------------

def save_trajectory_csv(traj: Trajectory, path: str | Path) -> None:
    lines = ["x,y,theta,steer,dir"]
    for pose, action in traj.steps:
        if action is None:
            lines.append(f"{pose.x!r},{pose.y!r},{pose.theta!r},,")
        else:
            lines.append(f"{pose.x!r},{pose.y!r},{pose.theta!r},{action.steer!r},{action.dir}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_trajectory_csv(path: str | Path, cost: float = 0.0) -> Trajectory:
    lines = Path(path).read_text().strip().splitlines()
    steps = []
    for line in lines[1:]:
        x, y, theta, steer, direction = line.split(",")
        action = None if steer == "" else Action(float(steer), int(direction))
        steps.append(TrajectoryStep(Pose(float(x), float(y), float(theta)), action))
    return Trajectory(tuple(steps), cost)


def _layout_to_pairs(layout: LotLayout) -> list[tuple[str, str]]:
    return [
        ("lot_width", repr(layout.lot_width)),
        ("lot_height", repr(layout.lot_height)),
        ("resolution", repr(layout.resolution)),
        ("wall_thickness", repr(layout.wall_thickness)),
        ("bay_width", repr(layout.bay_width)),
        ("bay_depth", repr(layout.bay_depth)),
        ("bays_per_row", str(layout.bays_per_row)),
        ("car_length", repr(layout.car_length)),
        ("car_width", repr(layout.car_width)),
        ("bay_fill_prob", repr(layout.bay_fill_prob)),
    ]


def save_scene_record(record: SceneRecord, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_pras(record.condition.cells, out / "condition.pras")
    save_pras(record.label.cells, out / "label.pras")
    scn = record.scenario
    pairs = [("seed", str(scn.seed))]
    pairs += _layout_to_pairs(scn.layout)
    pairs += [
        ("occupied_bays", ",".join(str(i) for i in scn.occupied_bays)),
        ("goal_bay", str(scn.goal_bay)),
        ("start", f"{scn.start.x!r} {scn.start.y!r} {scn.start.theta!r}"),
        ("goal", f"{scn.goal.x!r} {scn.goal.y!r} {scn.goal.theta!r}"),
        ("n_trajectories", str(len(record.trajectories))),
    ]
    for k, traj in enumerate(record.trajectories):
        save_trajectory_csv(traj, out / f"traj_{k}.csv")
        pairs.append((f"traj_{k}_cost", repr(traj.cost)))
    text = "\n".join(f"{key} = {value}" for key, value in pairs) + "\n"
    (out / "scenario.txt").write_text(text)


def _parse_pairs(path: Path) -> dict[str, str]:
    pairs = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


def load_scenario(scene_dir: str | Path) -> ParkingScenario:
    pairs = _parse_pairs(Path(scene_dir) / "scenario.txt")
    layout = LotLayout(
        lot_width=float(pairs["lot_width"]),
        lot_height=float(pairs["lot_height"]),
        resolution=float(pairs["resolution"]),
        wall_thickness=float(pairs["wall_thickness"]),
        bay_width=float(pairs["bay_width"]),
        bay_depth=float(pairs["bay_depth"]),
        bays_per_row=int(pairs["bays_per_row"]),
        car_length=float(pairs["car_length"]),
        car_width=float(pairs["car_width"]),
        bay_fill_prob=float(pairs["bay_fill_prob"]),
    )
    occupied = tuple(int(i) for i in pairs["occupied_bays"].split(",") if i)
    start = Pose(*(float(v) for v in pairs["start"].split()))
    goal = Pose(*(float(v) for v in pairs["goal"].split()))
    return ParkingScenario(layout, occupied, int(pairs["goal_bay"]), start, goal, int(pairs["seed"]))


def load_scene_record(scene_dir: str | Path) -> SceneRecord:
    scene_dir = Path(scene_dir)
    pairs = _parse_pairs(scene_dir / "scenario.txt")
    scenario = load_scenario(scene_dir)
    res = scenario.layout.resolution
    condition = SceneImage(load_pras(scene_dir / "condition.pras"), res)
    label = LabelImage(load_pras(scene_dir / "label.pras"), res)
    n = int(pairs["n_trajectories"])
    trajectories = tuple(
        load_trajectory_csv(scene_dir / f"traj_{k}.csv", float(pairs[f"traj_{k}_cost"]))
        for k in range(n)
    )
    return SceneRecord(scenario, condition, label, trajectories)


def generate_dataset(
    out_dir: str | Path,
    count: int,
    master_seed: int,
    layout: LotLayout = LotLayout(),
    veh: VehicleGeometry = VehicleGeometry(),
    cfg: Optional[PlannerConfig] = None,
) -> list[Path]:
    """Write ``count`` scenario directories; a master seed fully determines
    every scenario, expert set, and file byte. Unsolvable draws are discarded
    and resampled."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seed_rng = np.random.default_rng(master_seed)
    written: list[Path] = []
    while len(written) < count:
        candidate = int(seed_rng.integers(0, 2**31 - 1))
        try:
            scenario = sample_scenario(candidate, layout, veh)
            record = generate_expert_set(scenario, cfg, veh)
        except (InvalidScenarioError, ExpertSetError):
            continue
        scene_dir = out / f"scene_{len(written):05d}"
        save_scene_record(record, scene_dir)
        written.append(scene_dir)
    return written
