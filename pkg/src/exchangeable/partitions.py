"""Exchangeable random partitions: CRP, Dirichlet stick-breaking and Kingman's paint-box."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _dists
from .errors import ParameterError, ValidationError
from .rng import as_source, keyed_uniforms
from .structures import Partition


def _check_count(n, name="n"):
    if int(n) != n or n < 1:
        raise ParameterError(f"{name} must be a positive integer, got {n!r}")


def crp_sample(n: int, c: float, rng) -> Partition:
    """Chinese restaurant process partition of n elements with concentration c.

    Element m+1 joins an existing block b with probability |b|/(m+c) and opens
    a new block with probability c/(m+c).  Blocks are numbered by first
    appearance, so element 0 is always in block 0.
    """
    _check_count(n)
    if not c > 0:
        raise ParameterError(f"CRP concentration must be positive, got {c!r}")
    rng = as_source(rng)
    u = rng.uniforms("crp", np.arange(n))
    labels = np.zeros(n, dtype=np.int64)
    sizes = [1]
    for m in range(1, n):
        t = u[m] * (m + c)
        if t >= m:
            labels[m] = len(sizes)
            sizes.append(1)
        else:
            b = int(np.searchsorted(np.cumsum(sizes), t, side="right"))
            labels[m] = b
            sizes[b] += 1
    return Partition(labels)


def crp_sample_many(n: int, c: float, trials: int, rng) -> np.ndarray:
    """Labels of ``trials`` independent CRP draws, shape (trials, n).

    Row t equals ``crp_sample(n, c, rng.spawn(t)).labels``.
    """
    _check_count(n)
    _check_count(trials, "trials")
    if not c > 0:
        raise ParameterError(f"CRP concentration must be positive, got {c!r}")
    rng = as_source(rng)
    bases = rng.spawn_bases(trials, "crp")[:, None]
    u = keyed_uniforms(bases, [np.arange(n)[None, :]])
    counts = np.zeros((trials, n), dtype=np.int64)
    counts[:, 0] = 1
    nblocks = np.ones(trials, dtype=np.int64)
    labels = np.zeros((trials, n), dtype=np.int64)
    rows = np.arange(trials)
    for m in range(1, n):
        t = u[:, m] * (m + c)
        width = int(nblocks.max())
        cs = np.cumsum(counts[:, :width], axis=1)
        b = (cs <= t[:, None]).sum(axis=1)
        new = t >= m
        b = np.where(new, nblocks, b)
        nblocks += new
        counts[rows, b] += 1
        labels[:, m] = b
    return labels


@dataclass(frozen=True)
class StickWeights:
    weights: np.ndarray
    tail_mass: float


def dp_stick_breaking(alpha: float, tail_eps: float, rng) -> StickWeights:
    """Dirichlet-process stick-breaking weights V_k = (1-W_1)...(1-W_{k-1}) W_k, W ~ Beta(1, alpha).

    Sticks are broken until the unbroken remainder drops below ``tail_eps``;
    the remainder is returned as ``tail_mass``.  Weights come out in
    generation order, not sorted by size.
    """
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha!r}")
    if not 0 < tail_eps < 1:
        raise ParameterError(f"tail_eps must lie in (0, 1), got {tail_eps!r}")
    rng = as_source(rng)
    weights = []
    remaining = 1.0
    k = 0
    while remaining >= tail_eps:
        w = _dists.beta_1_a(rng.uniforms("dp-stick", np.arange(k, k + 64)), alpha)
        for wk in w:
            weights.append(remaining * wk)
            remaining *= 1.0 - wk
            if remaining < tail_eps:
                break
        k += 64
    return StickWeights(np.array(weights), remaining)


@dataclass(frozen=True)
class PaintboxParam:
    """Descending interval lengths s_1 >= s_2 >= ... with sum <= 1; the rest is dust."""

    s: tuple

    def __post_init__(self):
        s = tuple(float(x) for x in self.s)
        if any(x < 0 for x in s):
            raise ValidationError("paint-box lengths must be non-negative")
        if any(a < b for a, b in zip(s, s[1:])):
            raise ValidationError("paint-box lengths must be in descending order")
        if sum(s) > 1 + 1e-12:
            raise ValidationError(f"paint-box lengths sum to {sum(s)} > 1")
        object.__setattr__(self, "s", s)

    @property
    def residual(self) -> float:
        return max(0.0, 1.0 - sum(self.s))

    @classmethod
    def from_weights(cls, weights) -> "PaintboxParam":
        """Sort arbitrary weights (e.g. stick-breaking output) into a paint-box parameter."""
        return cls(tuple(sorted((float(w) for w in weights), reverse=True)))


def paintbox_sample(theta: PaintboxParam, n: int, rng) -> Partition:
    """Kingman paint-box: element i joins block j if U_i falls in [s_1+..+s_{j-1}, s_1+..+s_j).

    Elements landing in the dust interval become singletons.  Non-empty
    interval blocks are numbered in interval order, dust singletons after
    them in element order.
    """
    if not isinstance(theta, PaintboxParam):
        theta = PaintboxParam(tuple(theta))
    _check_count(n)
    rng = as_source(rng)
    u = rng.uniforms("paintbox", np.arange(n))
    edges = np.cumsum(theta.s)
    j = np.searchsorted(edges, u, side="right")
    in_interval = j < len(theta.s)
    occupied = np.unique(j[in_interval])
    labels = np.empty(n, dtype=np.int64)
    labels[in_interval] = np.searchsorted(occupied, j[in_interval])
    dust = np.flatnonzero(~in_interval)
    labels[dust] = len(occupied) + np.arange(len(dust))
    return Partition(labels)


def block_frequencies(p: Partition) -> np.ndarray:
    """Relative block sizes |b|/n in descending order."""
    if p.n < 1:
        raise ParameterError("partition must have at least one element")
    return np.sort(p.block_sizes / p.n)[::-1]
