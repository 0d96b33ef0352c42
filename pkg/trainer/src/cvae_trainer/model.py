"""Conditional VAE over trajectory-label rasters.

The model maps a 150 x 250 condition image (free space / obstacle / start /
goal markers, scaled to [0, 1] by dividing by 3) and a 32-dim latent sample
to a raster of predicted trajectory mass. Architecture:

* condition encoder: 3 conv layers (kernel 4, stride 2, padding 1, channels
  16/32/64, each BatchNorm + ReLU), flatten, one FC layer to 32 units.
  Spatial chain: 150x250 -> 75x125 -> 37x62 -> 18x31.
* recognition encoder: the same conv topology over the 2-channel stack of
  condition and label, then two parallel FC heads for mu and log-variance.
* decoder: concat(z, condition embedding) -> FC to a 64 x 18 x 31 feature
  map -> 3 transposed convs (kernel 4, stride 2, padding 1, channels
  32/16/1) with per-layer output padding chosen to land back at >= 150x250,
  BatchNorm + ReLU between layers, sigmoid output, center crop to 150x250.
"""

from __future__ import annotations

import torch
from torch import Tensor, nn

INPUT_HEIGHT = 150
INPUT_WIDTH = 250
LATENT_DIM = 32
EMBED_DIM = 32

# after three stride-2 convs (floor division by 2 each time)
FEAT_HEIGHT = INPUT_HEIGHT // 8  # 18
FEAT_WIDTH = INPUT_WIDTH // 8  # 31
FEAT_CHANNELS = 64

CONDITION_SCALE = 3.0  # raster values are {0,1,2,3}


def _check_geometry(x: Tensor, channels: int) -> None:
    if x.dim() != 4 or x.shape[1:] != (channels, INPUT_HEIGHT, INPUT_WIDTH):
        raise ValueError(
            f"expected (N, {channels}, {INPUT_HEIGHT}, {INPUT_WIDTH}) input, got {tuple(x.shape)}"
        )


def _conv_stack(in_channels: int) -> nn.Sequential:
    layers: list[nn.Module] = []
    channels = [in_channels, 16, 32, 64]
    for c_in, c_out in zip(channels, channels[1:]):
        layers += [
            nn.Conv2d(c_in, c_out, kernel_size=4, stride=2, padding=1),
            nn.BatchNorm2d(c_out),
            nn.ReLU(inplace=True),
        ]
    return nn.Sequential(*layers)


class ConditionEncoder(nn.Module):
    """Condition image -> 32-dim embedding."""

    def __init__(self) -> None:
        super().__init__()
        self.conv = _conv_stack(1)
        self.fc = nn.Linear(FEAT_CHANNELS * FEAT_HEIGHT * FEAT_WIDTH, EMBED_DIM)

    def forward(self, c: Tensor) -> Tensor:
        _check_geometry(c, 1)
        return self.fc(self.conv(c).flatten(1))


class RecognitionEncoder(nn.Module):
    """(condition, label) 2-channel stack -> (mu, log-variance)."""

    def __init__(self) -> None:
        super().__init__()
        self.conv = _conv_stack(2)
        flat = FEAT_CHANNELS * FEAT_HEIGHT * FEAT_WIDTH
        self.fc_mu = nn.Linear(flat, LATENT_DIM)
        self.fc_logvar = nn.Linear(flat, LATENT_DIM)

    def forward(self, c: Tensor, label: Tensor) -> tuple[Tensor, Tensor]:
        _check_geometry(c, 1)
        _check_geometry(label, 1)
        feats = self.conv(torch.cat([c, label], dim=1)).flatten(1)
        return self.fc_mu(feats), self.fc_logvar(feats)


class Decoder(nn.Module):
    """(z, condition embedding) -> raster of values in (0, 1)."""

    def __init__(self) -> None:
        super().__init__()
        self.fc = nn.Linear(LATENT_DIM + EMBED_DIM, FEAT_CHANNELS * FEAT_HEIGHT * FEAT_WIDTH)
        # output padding per layer, (height, width): 18x31 -> 37x62 -> 75x125
        # -> 150x250, i.e. the exact reverse of the encoder's floor chain
        self.deconv = nn.Sequential(
            nn.ConvTranspose2d(64, 32, kernel_size=4, stride=2, padding=1, output_padding=(1, 0)),
            nn.BatchNorm2d(32),
            nn.ReLU(inplace=True),
            nn.ConvTranspose2d(32, 16, kernel_size=4, stride=2, padding=1, output_padding=(1, 1)),
            nn.BatchNorm2d(16),
            nn.ReLU(inplace=True),
            nn.ConvTranspose2d(16, 1, kernel_size=4, stride=2, padding=1, output_padding=(0, 0)),
            nn.Sigmoid(),
        )

    def forward(self, z: Tensor, embedding: Tensor) -> Tensor:
        x = self.fc(torch.cat([z, embedding], dim=1))
        x = x.view(-1, FEAT_CHANNELS, FEAT_HEIGHT, FEAT_WIDTH)
        x = self.deconv(x)
        # center crop in case the transposed chain overshoots the target
        dh = x.shape[2] - INPUT_HEIGHT
        dw = x.shape[3] - INPUT_WIDTH
        if dh < 0 or dw < 0:
            raise RuntimeError(f"decoder undershoots the raster size: {tuple(x.shape)}")
        return x[:, :, dh // 2 : dh // 2 + INPUT_HEIGHT, dw // 2 : dw // 2 + INPUT_WIDTH]


def sample_latent(mu: Tensor, sigma: Tensor, eps: Tensor) -> Tensor:
    """Reparameterized draw z = mu + sigma * eps (elementwise)."""
    return mu + sigma * eps


def kl_divergence(mu: Tensor, logvar: Tensor) -> Tensor:
    """Closed-form KL(N(mu, sigma^2) || N(0, I)), summed over latent dims,
    one value per batch row."""
    return 0.5 * (mu.pow(2) + logvar.exp() - 1.0 - logvar).sum(dim=1)


def cvae_loss(
    label: Tensor, recon: Tensor, mu: Tensor, logvar: Tensor, beta: float
) -> tuple[Tensor, Tensor, Tensor]:
    """(total, reconstruction, KL); reconstruction is the summed squared
    pixel error, both terms batch-averaged."""
    recon_term = (label - recon).pow(2).flatten(1).sum(dim=1).mean()
    kl_term = kl_divergence(mu, logvar).mean()
    return recon_term + beta * kl_term, recon_term, kl_term


class CVAE(nn.Module):
    """Full model: recognition path for training, prior path for inference."""

    def __init__(self) -> None:
        super().__init__()
        self.condition_encoder = ConditionEncoder()
        self.recognition = RecognitionEncoder()
        self.decoder = Decoder()

    def forward(self, c: Tensor, label: Tensor) -> tuple[Tensor, Tensor, Tensor]:
        """Training pass: returns (reconstruction, mu, logvar)."""
        embedding = self.condition_encoder(c)
        mu, logvar = self.recognition(c, label)
        sigma = torch.exp(0.5 * logvar)
        z = sample_latent(mu, sigma, torch.randn_like(sigma))
        return self.decoder(z, embedding), mu, logvar

    @torch.no_grad()
    def generate(self, c: Tensor, generator: torch.Generator | None = None) -> Tensor:
        """Inference pass: z drawn from the standard-normal prior."""
        embedding = self.condition_encoder(c)
        z = torch.randn(
            c.shape[0], LATENT_DIM, generator=generator, device=c.device, dtype=c.dtype
        )
        return self.decoder(z, embedding)
