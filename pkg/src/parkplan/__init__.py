"""Motion-planning toolkit for autonomous parking: a kinodynamic best-first
planner, a guidance-gated variant driven by trajectory-distribution rasters,
and the dataset/benchmark machinery around them."""

from .collision import is_collide
from .errors import InvalidScenarioError, OutOfBoundsError, ParkplanError, RasterFormatError
from .geometry import Pose, VehicleGeometry, normalize_angle
from .guidance import (
    Dmap,
    GuidanceConfig,
    check_dist_map,
    load_dmap,
    save_dmap,
    synthetic_oracle,
)
from .guided import GuidedExpansionFilter, guided_plan
from .heuristic import CostField, build_holonomic_field, h
from .kinematics import Action, StepConfig, action_set, transition
from .rasters import (
    LabelImage,
    OccupancyGrid,
    Raster,
    SceneImage,
    load_pgm,
    load_pras,
    save_pgm,
    save_pras,
)
from .scenarios import (
    LotLayout,
    ParkingScenario,
    SceneRecord,
    generate_dataset,
    generate_expert_set,
    load_scenario,
    load_scene_record,
    sample_scenario,
)
from .scene import rasterize_condition, rasterize_trajectories
from .search import (
    CellIndex,
    Node,
    PlannerConfig,
    PlanResult,
    SearchStats,
    Trajectory,
    TrajectoryStep,
    backtrack,
    discretize,
    plan,
)

__version__ = "0.1.0"
