import math

import numpy as np
import pytest
import torch

from cvae_trainer.model import (
    CVAE,
    EMBED_DIM,
    FEAT_CHANNELS,
    FEAT_HEIGHT,
    FEAT_WIDTH,
    LATENT_DIM,
    ConditionEncoder,
    Decoder,
    RecognitionEncoder,
    cvae_loss,
    kl_divergence,
    sample_latent,
)


def rand_scene(n=1, seed=0):
    g = torch.Generator().manual_seed(seed)
    c = torch.randint(0, 4, (n, 1, 150, 250), generator=g).float() / 3.0
    y = (torch.rand(n, 1, 150, 250, generator=g) > 0.95).float()
    return c, y


class TestShapes:
    def test_conv_chain_spatial_shape(self):
        enc = ConditionEncoder().eval()
        c, _ = rand_scene()
        feats = enc.conv(c)
        assert feats.shape == (1, FEAT_CHANNELS, FEAT_HEIGHT, FEAT_WIDTH)
        assert (FEAT_HEIGHT, FEAT_WIDTH) == (18, 31)

    def test_intermediate_spatial_chain(self):
        enc = ConditionEncoder().eval()
        x, _ = rand_scene()
        shapes = []
        for layer in enc.conv:
            x = layer(x)
            if isinstance(layer, torch.nn.Conv2d):
                shapes.append(tuple(x.shape[2:]))
        assert shapes == [(75, 125), (37, 62), (18, 31)]

    def test_embedding_dimension(self):
        enc = ConditionEncoder().eval()
        c, _ = rand_scene(n=3)
        assert enc(c).shape == (3, EMBED_DIM)

    def test_recognition_head_dimensions(self):
        enc = RecognitionEncoder().eval()
        c, y = rand_scene(n=2)
        mu, logvar = enc(c, y)
        assert mu.shape == (2, LATENT_DIM)
        assert logvar.shape == (2, LATENT_DIM)
        sigma = torch.exp(0.5 * logvar)
        assert (sigma > 0).all()

    def test_decoder_output_geometry_and_range(self):
        dec = Decoder().eval()
        out = dec(torch.randn(2, LATENT_DIM), torch.randn(2, EMBED_DIM))
        assert out.shape == (2, 1, 150, 250)
        assert (out > 0).all() and (out < 1).all()

    def test_wrong_geometry_rejected(self):
        enc = ConditionEncoder().eval()
        with pytest.raises(ValueError):
            enc(torch.rand(1, 1, 150, 249))
        with pytest.raises(ValueError):
            RecognitionEncoder().eval()(torch.rand(1, 1, 150, 250), torch.rand(1, 1, 149, 250))

    def test_encoder_is_deterministic(self):
        enc = ConditionEncoder().eval()
        c, _ = rand_scene()
        assert torch.equal(enc(c), enc(c))


class TestLatent:
    def test_zero_noise_returns_mean(self):
        mu = torch.arange(32.0).unsqueeze(0)
        z = sample_latent(mu, torch.ones_like(mu), torch.zeros_like(mu))
        assert torch.equal(z, mu)

    def test_zero_sigma_returns_mean(self):
        mu = torch.arange(32.0).unsqueeze(0)
        eps = torch.randn(1, 32)
        assert torch.equal(sample_latent(mu, torch.zeros_like(mu), eps), mu)

    def test_elementwise_arithmetic(self):
        mu = torch.full((1, 32), 1.0)
        sigma = torch.full((1, 32), 2.0)
        eps = torch.full((1, 32), 0.5)
        assert torch.equal(sample_latent(mu, sigma, eps), torch.full((1, 32), 2.0))


class TestLoss:
    def test_standard_normal_posterior_has_zero_kl(self):
        mu = torch.zeros(1, 32)
        logvar = torch.zeros(1, 32)  # sigma = 1
        assert kl_divergence(mu, logvar).item() == 0.0

    def test_unit_vector_mean_gives_half(self):
        mu = torch.zeros(1, 32)
        mu[0, 0] = 1.0
        logvar = torch.zeros(1, 32)
        assert kl_divergence(mu, logvar).item() == pytest.approx(0.5)
        y = torch.rand(1, 1, 150, 250)
        total, recon, kl = cvae_loss(y, y, mu, logvar, beta=0.1)
        assert recon.item() == 0.0
        assert total.item() == pytest.approx(0.05)

    def test_perfect_reconstruction_zero_terms(self):
        y = torch.rand(1, 1, 150, 250)
        total, recon, kl = cvae_loss(y, y, torch.zeros(1, 32), torch.zeros(1, 32), 0.1)
        assert total.item() == 0.0

    def test_both_terms_nonnegative(self):
        g = torch.Generator().manual_seed(4)
        for _ in range(20):
            mu = torch.randn(3, 32, generator=g)
            logvar = torch.randn(3, 32, generator=g)
            y = torch.rand(3, 1, 150, 250, generator=g)
            yhat = torch.rand(3, 1, 150, 250, generator=g)
            total, recon, kl = cvae_loss(y, yhat, mu, logvar, 0.1)
            assert recon.item() >= 0.0
            assert kl.item() >= -1e-9

    def test_reconstruction_is_summed_squared_error(self):
        y = torch.zeros(1, 1, 150, 250)
        yhat = torch.zeros(1, 1, 150, 250)
        yhat[0, 0, 0, :5] = 0.5
        _, recon, _ = cvae_loss(y, yhat, torch.zeros(1, 32), torch.zeros(1, 32), 0.1)
        assert recon.item() == pytest.approx(5 * 0.25)


class TestGradient:
    def test_loss_gradient_matches_finite_differences(self):
        """End-to-end differentiability through the reparameterized sample on
        a 4-pixel toy decoder, against central differences, in float64."""
        torch.manual_seed(0)
        W = torch.randn(4, LATENT_DIM, dtype=torch.float64)
        eps = torch.randn(1, LATENT_DIM, dtype=torch.float64)
        label = torch.tensor([[1.0, 0.0, 1.0, 0.0]], dtype=torch.float64)
        mu0 = torch.randn(1, LATENT_DIM, dtype=torch.float64)
        logvar0 = torch.randn(1, LATENT_DIM, dtype=torch.float64) * 0.1

        def loss_of(mu, logvar):
            sigma = torch.exp(0.5 * logvar)
            z = sample_latent(mu, sigma, eps)
            recon = torch.sigmoid(z @ W.T)
            total = (label - recon).pow(2).sum() + 0.1 * kl_divergence(mu, logvar).sum()
            return total

        mu = mu0.clone().requires_grad_(True)
        logvar = logvar0.clone().requires_grad_(True)
        loss_of(mu, logvar).backward()

        h = 1e-6
        for tensor, grad in ((mu0, mu.grad), (logvar0, logvar.grad)):
            for i in range(LATENT_DIM):
                plus, minus = tensor.clone(), tensor.clone()
                plus[0, i] += h
                minus[0, i] -= h
                args_p = (plus, logvar0) if tensor is mu0 else (mu0, plus)
                args_m = (minus, logvar0) if tensor is mu0 else (mu0, minus)
                fd = (loss_of(*args_p) - loss_of(*args_m)).item() / (2 * h)
                scale = max(abs(fd), abs(grad[0, i].item()), 1e-8)
                assert abs(grad[0, i].item() - fd) / scale < 1e-4


def test_full_model_training_pass_backpropagates():
    torch.manual_seed(1)
    model = CVAE()
    model.train()
    c, y = rand_scene(n=2, seed=1)
    recon, mu, logvar = model(c, y)
    total, _, _ = cvae_loss(y, recon, mu, logvar, 0.1)
    total.backward()
    grads = [p.grad for p in model.parameters() if p.grad is not None]
    assert grads, "no gradients reached the parameters"
    assert all(torch.isfinite(g).all() for g in grads)
    assert math.isfinite(total.item())
