"""Hoff's eigenmodel with a noisy sigmoid/probit link."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _dists
from ..arrays import noisy_link_kernel, randomize
from ..errors import ParameterError
from ..rng import as_source


@dataclass(frozen=True)
class EigenParams:
    """Embedding dimension ``d``, link noise N(noise_mean, noise_var), Laplace embedding scale."""

    d: int = 2
    noise_mean: float = 0.0
    noise_var: float = 1.0
    link: str = "probit"
    scale: float = 1.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"embedding dimension must be a positive integer, got {self.d!r}")
        if not self.noise_var > 0:
            raise ParameterError(f"noise variance must be positive, got {self.noise_var!r}")
        if not self.scale > 0:
            raise ParameterError(f"Laplace scale must be positive, got {self.scale!r}")
        if self.link not in _dists.LINKS:
            raise ParameterError(f"unknown link {self.link!r}; choose from {sorted(_dists.LINKS)}")


@dataclass(frozen=True)
class EigenSample:
    X: np.ndarray
    embeddings: np.ndarray
    Lambda: np.ndarray

    @property
    def G(self) -> np.ndarray:
        return bilinear(self.embeddings, self.Lambda)


def bilinear(x, Lambda) -> np.ndarray:
    """G(x_i, x_j) = sum_{a,b} x_ia x_jb Lambda_ab for all pairs."""
    return x @ Lambda @ x.T


def eigenmodel_sample(n: int, p: EigenParams, rng, Lambda=None) -> EigenSample:
    """Binary n x n eigenmodel array.

    Each vertex gets a Laplace(0, scale)^d embedding, Lambda has i.i.d.
    standard normal entries unless given, and entry (i, j), i != j, is drawn
    from the noisy-link family at G(x_i, x_j) by sampling the Gaussian noise
    per entry.  The diagonal is left at 0.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    rng = as_source(rng)
    d = p.d
    u = rng.uniforms("eigen-embedding", np.arange(1, n + 1)[:, None], np.arange(d)[None, :])
    x = _dists.laplace(u, p.scale).reshape(n, d)
    if Lambda is None:
        lu = rng.uniforms("eigen-lambda", np.arange(d)[:, None], np.arange(d)[None, :])
        Lambda = _dists.normal(lu).reshape(d, d)
    else:
        Lambda = np.asarray(Lambda, dtype=float).reshape(d, d)
    G = bilinear(x, Lambda)
    X = randomize(G, noisy_link_kernel(p.noise_mean, p.noise_var, p.link), rng, tag="eigen-x")
    np.fill_diagonal(X, 0)
    return EigenSample(X, x, Lambda)
