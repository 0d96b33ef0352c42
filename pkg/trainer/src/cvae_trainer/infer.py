"""Checkpoint inference: condition image in, DMAP guidance raster out.

The decoder runs on a prior latent sample (z ~ N(0, I)); the sigmoid output
is normalized to [0, 1] by its per-image maximum so the planner's pruning
threshold means the same thing across checkpoints. A degenerate output
(max < 1e-6) is emitted as all zeros rather than amplified noise.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch

from .io import load_pras, save_dmap
from .model import CVAE, CONDITION_SCALE, INPUT_HEIGHT, INPUT_WIDTH


def infer_values(model: CVAE, condition: np.ndarray, seed: int) -> np.ndarray:
    """Run one prior-sample decode; returns the normalized (150, 250) raster."""
    if condition.shape != (INPUT_HEIGHT, INPUT_WIDTH):
        raise ValueError(
            f"condition has shape {condition.shape}, expected ({INPUT_HEIGHT}, {INPUT_WIDTH})"
        )
    model.eval()
    c = torch.from_numpy(condition.astype(np.float32) / CONDITION_SCALE).reshape(
        1, 1, INPUT_HEIGHT, INPUT_WIDTH
    )
    generator = torch.Generator().manual_seed(seed)
    out = model.generate(c, generator=generator)[0, 0].numpy()
    peak = float(out.max())
    if peak < 1e-6:
        return np.zeros_like(out, dtype=np.float32)
    return np.clip(out / peak, 0.0, 1.0).astype(np.float32)


def infer_dmap(model: CVAE, condition_path: str | Path, seed: int, out_path: str | Path) -> None:
    condition = load_pras(condition_path)
    save_dmap(infer_values(model, condition, seed), out_path)
