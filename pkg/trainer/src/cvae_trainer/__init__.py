"""Conditional-VAE trainer for parking-scene guidance rasters."""

from .data import SceneDataset, scene_dirs, train_val_split
from .infer import infer_dmap, infer_values
from .io import RasterIOError, load_dmap, load_pras, save_dmap
from .model import (
    CVAE,
    EMBED_DIM,
    FEAT_CHANNELS,
    FEAT_HEIGHT,
    FEAT_WIDTH,
    INPUT_HEIGHT,
    INPUT_WIDTH,
    LATENT_DIM,
    ConditionEncoder,
    Decoder,
    RecognitionEncoder,
    cvae_loss,
    kl_divergence,
    sample_latent,
)
from .train import TrainConfig, load_checkpoint, overfit_single, save_checkpoint, train

__version__ = "0.1.0"
