"""Training loop: Adam, fixed learning rate, reconstruction + beta * KL.

Determinism note: runs are reproducible for a fixed seed on the same
hardware, torch build, and thread count (``torch.manual_seed`` pins
initialization, shuffling, and the reparameterization noise); bitwise
reproducibility across different machines is not guaranteed by torch.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path

import torch
from torch.utils.data import DataLoader, Dataset

from .model import CVAE, cvae_loss


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.001
    beta: float = 0.1
    batch_size: int = 16
    epochs: int = 20
    seed: int = 0

    def __post_init__(self) -> None:
        if self.learning_rate <= 0 or self.batch_size < 1 or self.epochs < 1:
            raise ValueError("learning_rate, batch_size, and epochs must be positive")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")


def save_checkpoint(model: CVAE, config: TrainConfig, path: str | Path) -> None:
    torch.save({"state_dict": model.state_dict(), "config": asdict(config)}, path)


def load_checkpoint(path: str | Path) -> tuple[CVAE, TrainConfig]:
    payload = torch.load(path, map_location="cpu", weights_only=True)
    config = TrainConfig(**payload["config"])
    model = CVAE()
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, config


def train(
    dataset: Dataset,
    config: TrainConfig,
    out_path: str | Path,
    curve_path: str | Path | None = None,
) -> list[float]:
    """Train a fresh model on ``dataset``; writes the checkpoint and an
    optional per-epoch loss curve CSV. Returns the per-epoch mean losses."""
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    torch.manual_seed(config.seed)
    model = CVAE()
    model.train()
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    loader = DataLoader(dataset, batch_size=config.batch_size, shuffle=True)

    epoch_losses: list[float] = []
    for _ in range(config.epochs):
        total = 0.0
        count = 0
        for condition, label in loader:
            optimizer.zero_grad()
            recon, mu, logvar = model(condition, label)
            loss, _, _ = cvae_loss(label, recon, mu, logvar, config.beta)
            loss.backward()
            optimizer.step()
            total += loss.item() * condition.shape[0]
            count += condition.shape[0]
        epoch_losses.append(total / count)

    model.eval()
    save_checkpoint(model, config, out_path)
    if curve_path is not None:
        lines = ["epoch,loss"] + [f"{i},{v!r}" for i, v in enumerate(epoch_losses)]
        Path(curve_path).write_text("\n".join(lines) + "\n")
    return epoch_losses


def overfit_single(
    condition: torch.Tensor,
    label: torch.Tensor,
    steps: int = 500,
    config: TrainConfig = TrainConfig(),
) -> CVAE:
    """Memorize one (condition, label) pair; a capacity smoke test."""
    torch.manual_seed(config.seed)
    model = CVAE()
    model.train()
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    c = condition.unsqueeze(0)
    y = label.unsqueeze(0)
    for _ in range(steps):
        optimizer.zero_grad()
        recon, mu, logvar = model(c, y)
        loss, _, _ = cvae_loss(y, recon, mu, logvar, config.beta)
        loss.backward()
        optimizer.step()
    model.eval()
    return model
