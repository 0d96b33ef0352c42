"""Dataset over exported scene directories.

A dataset directory holds one subdirectory per scene (``scene_00000``, ...),
each with ``condition.pras`` (values 0..3) and ``label.pras`` (values 0/1).
The condition is scaled to [0, 1] by dividing by 3; the label is already
binary. Scenes are split 90/10 into train/validation by directory order,
which is deterministic because the exporter numbers directories.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch
from torch.utils.data import Dataset

from .io import load_pras
from .model import CONDITION_SCALE, INPUT_HEIGHT, INPUT_WIDTH


def scene_dirs(root: str | Path) -> list[Path]:
    root = Path(root)
    dirs = sorted(p for p in root.iterdir() if p.is_dir() and (p / "condition.pras").exists())
    if not dirs:
        raise FileNotFoundError(f"no scene directories under {root}")
    return dirs


class SceneDataset(Dataset):
    """(condition, label) float tensor pairs, each (1, 150, 250)."""

    def __init__(self, dirs: list[Path]):
        self.dirs = list(dirs)

    def __len__(self) -> int:
        return len(self.dirs)

    def __getitem__(self, idx: int) -> tuple[torch.Tensor, torch.Tensor]:
        scene = self.dirs[idx]
        condition = load_pras(scene / "condition.pras").astype(np.float32) / CONDITION_SCALE
        label = load_pras(scene / "label.pras").astype(np.float32)
        for name, arr in (("condition", condition), ("label", label)):
            if arr.shape != (INPUT_HEIGHT, INPUT_WIDTH):
                raise ValueError(f"{scene}/{name}.pras has shape {arr.shape}, "
                                 f"expected ({INPUT_HEIGHT}, {INPUT_WIDTH})")
        return torch.from_numpy(condition).unsqueeze(0), torch.from_numpy(label).unsqueeze(0)


def train_val_split(root: str | Path, val_fraction: float = 0.1) -> tuple[SceneDataset, SceneDataset]:
    dirs = scene_dirs(root)
    n_val = int(len(dirs) * val_fraction)
    if n_val == 0:
        return SceneDataset(dirs), SceneDataset([])
    return SceneDataset(dirs[:-n_val]), SceneDataset(dirs[-n_val:])
