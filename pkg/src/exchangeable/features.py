"""Exchangeable feature allocations: the Indian buffet process and feature paint-boxes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _dists
from .errors import ParameterError, SizeError, ValidationError
from .rng import as_source
from .structures import FeatureAllocation

MAX_MATERIALIZED_FEATURE = 20


def ibp_sample(n: int, gamma: float, rng) -> FeatureAllocation:
    """Sequential Indian buffet process with rate ``gamma``.

    Row 1 draws Poisson(gamma) features.  Row k draws Poisson(gamma/k) new
    features and takes each existing feature independently with probability
    m/k, where m is the number of earlier rows that own it.  Feature ids are
    assigned in order of creation.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if not gamma > 0:
        raise ParameterError(f"IBP rate must be positive, got {gamma!r}")
    rng = as_source(rng)
    rows = np.arange(1, n + 1)
    new = _dists.poisson(rng.uniforms("ibp-new", rows), gamma / rows)
    first = np.concatenate([[0], np.cumsum(new)])
    K = int(first[-1])
    Z = np.zeros((n, K), dtype=bool)
    if K == 0:
        return FeatureAllocation(Z)
    inherit = rng.uniforms("ibp-inherit", rows[:, None], np.arange(K)[None, :])
    owners = np.zeros(K, dtype=np.int64)
    for k in range(1, n + 1):
        known = first[k - 1]
        if known:
            take = inherit[k - 1, :known] < owners[:known] / k
            Z[k - 1, :known] = take
        Z[k - 1, known:first[k]] = True
        owners += Z[k - 1]
    return FeatureAllocation(Z)


@dataclass(frozen=True)
class FeaturePaintbox:
    """Nested feature paint-box with inclusion probabilities V_1 >= V_2 >= ... .

    Feature 0 owns [0, V_1).  Once the first k features are placed, [0, 1) is
    cut into 2^k atoms; feature k+1 owns the left fraction V_{k+1} of every
    atom.  A uniform point therefore owns each feature independently with
    probability V_k, and the set owned by feature k has measure V_k.
    """

    V: tuple

    def __post_init__(self):
        V = tuple(float(v) for v in self.V)
        if any(not 0.0 <= v <= 1.0 for v in V):
            raise ValidationError("feature probabilities must lie in [0, 1]")
        if any(a < b for a, b in zip(V, V[1:])):
            raise ValidationError("feature probabilities must be non-increasing")
        object.__setattr__(self, "V", V)

    @property
    def num_features(self) -> int:
        return len(self.V)

    @property
    def total_mass(self) -> float:
        return float(sum(self.V))

    def intervals(self, k: int) -> list[tuple[Fraction, Fraction]]:
        """Exact half-open intervals making up the set of feature ``k`` (0-based)."""
        if not 0 <= k < len(self.V):
            raise ParameterError(f"feature {k} out of range")
        if k > MAX_MATERIALIZED_FEATURE:
            raise SizeError(f"feature {k} has 2^{k} intervals; membership() avoids materializing them")
        atoms = [(Fraction(0), Fraction(1))]
        for j in range(k):
            v = Fraction(self.V[j])
            atoms = [piece for a, b in atoms for piece in ((a, a + (b - a) * v), (a + (b - a) * v, b))]
        v = Fraction(self.V[k])
        return [(a, a + (b - a) * v) for a, b in atoms if v > 0 and b > a]

    def membership(self, u) -> np.ndarray:
        """Boolean matrix (len(u), K): point u owns feature k."""
        r = np.array(u, dtype=float).reshape(-1)
        out = np.zeros((len(r), len(self.V)), dtype=bool)
        for k, v in enumerate(self.V):
            has = r < v
            out[:, k] = has
            if 0.0 < v < 1.0:
                r = np.where(has, r / v, (r - v) / (1.0 - v))
        return out


def ibp_stick_breaking(alpha: float, tail_eps: float, rng) -> FeaturePaintbox:
    """IBP stick-breaking: V_k = W_1 ... W_k with W_j ~ Beta(alpha, 1), kept while V_k >= tail_eps.

    The expected number of features an element misses through truncation is
    at most tail_eps / (1 - alpha/(alpha+1)).
    """
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha!r}")
    if not 0 < tail_eps < 1:
        raise ParameterError(f"tail_eps must lie in (0, 1), got {tail_eps!r}")
    rng = as_source(rng)
    V = []
    v = 1.0
    j = 0
    while True:
        w = _dists.beta_a_1(rng.uniforms("ibp-stick", np.arange(j, j + 64)), alpha)
        for wj in w:
            v *= wj
            if v < tail_eps:
                return FeaturePaintbox(tuple(V))
            V.append(v)
        j += 64


def allocation_from_paintbox(pb: FeaturePaintbox, n: int, rng) -> FeatureAllocation:
    """Draw U_1..U_n uniform; element i owns feature k iff U_i lies in the set of feature k."""
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    rng = as_source(rng)
    u = rng.uniforms("feature-paintbox", np.arange(n))
    return FeatureAllocation(pb.membership(u))
