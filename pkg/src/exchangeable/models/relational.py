"""Cluster- and feature-based relational models: IRM and LFRM."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _dists
from ..arrays import BERNOULLI, randomize
from ..errors import ParameterError
from ..features import ibp_sample
from ..partitions import crp_sample
from ..rng import as_source
from ..structures import FeatureAllocation, Partition


@dataclass(frozen=True)
class IrmParams:
    c: float = 1.0
    c_col: float = 1.0
    beta_a: float = 1.0
    beta_b: float = 1.0

    def __post_init__(self):
        for name in ("c", "c_col", "beta_a", "beta_b"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"IRM parameter {name} must be positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class IrmSample:
    X: np.ndarray
    rows: Partition
    cols: Partition
    theta: np.ndarray


def irm_sample(n: int, m: int, p: IrmParams, rng, joint: bool = False) -> IrmSample:
    """Infinite relational model.

    Rows and columns are clustered by independent CRPs (concentrations ``c``
    and ``c_col``), each pair of clusters gets a Beta(beta_a, beta_b) link
    probability, and entries are Bernoulli given their block's probability.
    With ``joint=True`` the array is square and columns reuse the row
    partition, the jointly exchangeable variant.
    """
    if joint and n != m:
        raise ParameterError("joint IRM needs a square array")
    rng = as_source(rng)
    rows = crp_sample(n, p.c, rng.spawn(0))
    cols = rows if joint else crp_sample(m, p.c_col, rng.spawn(1))
    K, L = rows.num_blocks, cols.num_blocks
    u = rng.uniforms("irm-theta", np.arange(K)[:, None], np.arange(L)[None, :])
    theta = _dists.beta(u, p.beta_a, p.beta_b)
    X = randomize(theta[np.ix_(rows.labels, cols.labels)], BERNOULLI, rng, tag="irm-x")
    return IrmSample(X, rows, cols, theta)


@dataclass(frozen=True)
class LfrmParams:
    gamma: float = 1.0
    gamma_col: float = 1.0
    weight_sd: float = 1.0
    link: str = "logistic"

    def __post_init__(self):
        for name in ("gamma", "gamma_col", "weight_sd"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"LFRM parameter {name} must be positive, got {getattr(self, name)!r}")
        if self.link not in _dists.LINKS:
            raise ParameterError(f"unknown link {self.link!r}; choose from {sorted(_dists.LINKS)}")


@dataclass(frozen=True)
class LfrmSample:
    X: np.ndarray
    rows: FeatureAllocation
    cols: FeatureAllocation
    weights: np.ndarray
    link: str = "logistic"

    @property
    def theta(self) -> np.ndarray:
        return link_probabilities(self.rows.Z, self.cols.Z, self.weights, self.link)


def link_probabilities(Zr, Zc, weights, link: str = "logistic") -> np.ndarray:
    """sig(sum_{k in N_i} sum_{k' in M_j} w_{k,k'}) for all rows i and columns j."""
    s = Zr.astype(float) @ weights @ Zc.astype(float).T
    return _dists.LINKS[link](s)


def lfrm_sample(n: int, m: int, p: LfrmParams, rng) -> LfrmSample:
    """Latent feature relational model: IBP features, Gaussian feature-pair weights, Bernoulli links."""
    rng = as_source(rng)
    rows = ibp_sample(n, p.gamma, rng.spawn(0))
    cols = ibp_sample(m, p.gamma_col, rng.spawn(1))
    K, L = rows.num_features, cols.num_features
    u = rng.uniforms("lfrm-weight", np.arange(K)[:, None], np.arange(L)[None, :])
    weights = _dists.normal(u, 0.0, p.weight_sd).reshape(K, L)
    theta = link_probabilities(rows.Z, cols.Z, weights, p.link)
    X = randomize(theta, BERNOULLI, rng, tag="lfrm-x")
    return LfrmSample(X, rows, cols, weights, p.link)
