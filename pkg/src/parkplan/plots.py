"""Matplotlib figure rendering for scenarios, trajectories, and reports."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import BenchRow, summarize
from .geometry import VehicleGeometry
from .guidance import Dmap
from .rasters import OccupancyGrid, save_pgm
from .search import Trajectory


def render_scenario_figure(
    grid: OccupancyGrid,
    trajectories: Sequence[Trajectory] = (),
    dmap: Optional[Dmap] = None,
    veh: Optional[VehicleGeometry] = None,
    out_path: str | Path = "scene.png",
    title: str = "",
) -> Path:
    """Draw the lot, an optional guidance map, and trajectories into a PNG."""
    fig, ax = plt.subplots(figsize=(8, 5))
    extent = (0.0, grid.width_m, 0.0, grid.height_m)
    if dmap is not None:
        ax.imshow(dmap.values, origin="lower", extent=extent, cmap="Blues", vmin=0, vmax=1)
    ax.imshow(
        np.ma.masked_where(grid.cells == 0, grid.cells),
        origin="lower",
        extent=extent,
        cmap="gray_r",
        vmin=0,
        vmax=1,
    )
    for k, traj in enumerate(trajectories):
        xs = [p.x for p in traj.poses]
        ys = [p.y for p in traj.poses]
        ax.plot(xs, ys, marker="o", markersize=2.5, linewidth=1.2, label=f"trajectory {k}")
        if veh is not None:
            for pose in traj.poses:
                corners = veh.footprint_corners(pose)
                corners.append(corners[0])
                ax.plot([c[0] for c in corners], [c[1] for c in corners], color="0.6", linewidth=0.4)
    if trajectories:
        poses = trajectories[0].poses
        ax.plot(poses[0].x, poses[0].y, "g^", markersize=9, label="start")
        ax.plot(poses[-1].x, poses[-1].y, "r*", markersize=12, label="goal")
        ax.legend(loc="upper right", fontsize=8)
    ax.set_xlim(extent[0], extent[1])
    ax.set_ylim(extent[2], extent[3])
    ax.set_aspect("equal")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    if title:
        ax.set_title(title)
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out_path


def render_scenario_pgm(
    grid: OccupancyGrid,
    trajectories: Sequence[Trajectory] = (),
    out_path: str | Path = "scene.pgm",
) -> Path:
    """Grayscale PGM: free 255, obstacles 0, trajectory pixels 128."""
    image = np.where(grid.cells > 0, 0, 255).astype(np.uint8)
    for traj in trajectories:
        for pose in traj.poses:
            if grid.contains_point(pose.x, pose.y):
                col, row = grid.pixel_of(pose.x, pose.y)
                image[row, col] = 128
    out_path = Path(out_path)
    save_pgm(image, out_path)
    return out_path


def render_bench_figure(rows: Sequence[BenchRow], out_path: str | Path) -> Path:
    """Per-scenario ratio bars with the median lines, next to the CSV report."""
    import math

    solved = [r for r in rows if not math.isnan(r.node_ratio)]
    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=False)
    labels = [r.scenario_id for r in solved]
    x = np.arange(len(solved))
    summary = summarize(rows)
    for ax, values, median, name in (
        (axes[0], [r.node_ratio for r in solved], summary["median_node_ratio"], "open-list inserts"),
        (axes[1], [r.time_ratio for r in solved], summary["median_time_ratio"], "wall time"),
    ):
        ax.bar(x, values, color="steelblue")
        ax.axhline(1.0, color="0.3", linewidth=0.8, linestyle=":")
        if not math.isnan(median):
            ax.axhline(median, color="firebrick", linewidth=1.2, label=f"median {median:.2f}")
            ax.legend(fontsize=8)
        ax.set_xticks(x)
        ax.set_xticklabels(labels, rotation=90, fontsize=6)
        ax.set_ylabel(f"guided / unguided ({name})")
    fig.suptitle("Guided vs unguided search")
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
