"""Isotropic multivariate Cauchy noise: density, sampling, diagnostics.

The law has density c_d * gamma^-d * (1 + |n|^2/gamma^2)^-((d+1)/2) with
c_d = Gamma((d+1)/2) / pi^((d+1)/2). Samples are generated as the ratio
gamma * G / H of a standard Gaussian vector and an independent scalar
Gaussian, which reproduces the isotropic law in any dimension. Every
projection of the vector onto a unit direction is scalar Cauchy with the
same scale, and :func:`projection_ks` measures how far an empirical
sample is from that prediction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSampleCount,
    NonpositiveInput,
    NotUnitVector,
)
from .rng import RngStream

__all__ = [
    "NoiseModel",
    "RngStream",
    "cauchy_cdf",
    "gauss_ratio",
    "log_density",
    "log_norm_constant",
    "projection_ks",
    "sample",
    "sample_batch",
]


@dataclass(frozen=True)
class NoiseModel:
    """Scale and dimension of one isotropic Cauchy noise law."""

    gamma: float
    d: int

    def __post_init__(self):
        if not self.gamma > 0:
            raise NonpositiveInput("gamma must be > 0")
        if int(self.d) < 1:
            raise NonpositiveInput("dimension must be >= 1")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "d", int(self.d))


def log_norm_constant(d: int) -> float:
    """log of c_d = Gamma((d+1)/2) / pi^((d+1)/2)."""
    return math.lgamma((d + 1) / 2.0) - ((d + 1) / 2.0) * math.log(math.pi)


def log_density(model: NoiseModel, n) -> float | np.ndarray:
    """Log density at one vector (shape (d,)) or a stack (..., d)."""
    v = np.asarray(n, dtype=float)
    if v.shape[-1:] != (model.d,):
        raise DimensionMismatch(f"expected trailing dimension {model.d}")
    sq = (v**2).sum(axis=-1)
    out = (
        log_norm_constant(model.d)
        - model.d * math.log(model.gamma)
        - ((model.d + 1) / 2.0) * np.log1p(sq / model.gamma**2)
    )
    return float(out) if np.ndim(out) == 0 else out


def cauchy_cdf(z, gamma: float):
    """CDF of the scalar Cauchy law with location 0 and scale gamma."""
    return 0.5 + np.arctan(np.asarray(z, dtype=float) / gamma) / math.pi


def gauss_ratio(gamma: float, g, h):
    """Deterministic sampler core: gamma * g / h with broadcasting over h."""
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    if g.ndim == 2:
        h = h[:, None]
    return gamma * g / h


def sample_batch(model: NoiseModel, gen: np.random.Generator, n: int) -> np.ndarray:
    """Draw n noise vectors, shape (n, d).

    Consumes (n, d+1) standard normals per call: d for the Gaussian
    vector and one for the scalar divisor. An exactly zero divisor is
    redrawn; near-zero divisors are kept, they are the heavy tail.
    """
    z = gen.standard_normal((int(n), model.d + 1))
    g, h = z[:, : model.d], z[:, model.d].copy()
    while (zero := h == 0.0).any():
        z2 = gen.standard_normal((int(zero.sum()), model.d + 1))
        g[zero] = z2[:, : model.d]
        h[zero] = z2[:, model.d]
    return gauss_ratio(model.gamma, g, h)


def sample(model: NoiseModel, gen: np.random.Generator) -> np.ndarray:
    """Draw a single noise vector, shape (d,)."""
    return sample_batch(model, gen, 1)[0]


def projection_ks(
    model: NoiseModel,
    u,
    n_samples: int,
    stream: RngStream | np.random.Generator,
) -> float:
    """Kolmogorov-Smirnov distance of a projected sample from Cauchy(0, gamma).

    Projects ``n_samples`` fresh noise draws onto the unit direction u
    and compares the empirical CDF against the scalar Cauchy CDF. Small
    values support the claim that every unit projection keeps the same
    scalar law and scale.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (model.d,):
        raise DimensionMismatch(f"expected a direction of dimension {model.d}")
    if abs(float(np.linalg.norm(u)) - 1.0) > 1e-9:
        raise NotUnitVector("projection direction must have unit norm")
    n = int(n_samples)
    if n < 100:
        raise InvalidSampleCount("need at least 100 samples for the KS statistic")

    gen = stream.generator() if isinstance(stream, RngStream) else stream
    z = np.sort(sample_batch(model, gen, n) @ u)
    f = cauchy_cdf(z, model.gamma)
    grid = np.arange(1, n + 1) / n
    return float(max((grid - f).max(), (f - (grid - 1.0 / n)).max()))
