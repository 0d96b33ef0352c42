import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the scene_fixtures helper

from scene_fixtures import synthetic_scene, write_pras


@pytest.fixture(scope="session")
def scene_pair():
    return synthetic_scene()


@pytest.fixture()
def tiny_dataset(tmp_path, scene_pair):
    """Three scene directories built from shifted copies of the fixture."""
    condition, label = scene_pair
    root = tmp_path / "data"
    for k in range(3):
        scene = root / f"scene_{k:05d}"
        scene.mkdir(parents=True)
        write_pras(np.roll(condition, k * 5, axis=1), scene / "condition.pras")
        write_pras(np.roll(label, k * 5, axis=1), scene / "label.pras")
    return root
