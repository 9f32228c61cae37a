"""Homomorphism densities of small motifs in graphons and finite graphs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ParameterError, SizeError, ValidationError
from ..graphons import AnalyticGraphon, StepGraphon
from ..structures import Graph

MAX_MOTIF_VERTICES = 6
EINSUM_LIMIT = 10**9
MIN_RESOLUTION = 512
_LETTERS = "abcdef"


@dataclass(frozen=True)
class MotifGraph:
    """Small simple graph on vertices 0..n-1 given by its edge list."""

    n: int
    edges: tuple
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.n <= MAX_MOTIF_VERTICES:
            raise ValidationError(f"motifs have 1..{MAX_MOTIF_VERTICES} vertices, got {self.n}")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValidationError(f"motif has a loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValidationError(f"motif edge ({a}, {b}) out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValidationError(f"motif edge {e} repeated")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


K2 = MotifGraph(2, ((0, 1),), "K2")
K3 = MotifGraph(3, ((0, 1), (1, 2), (0, 2)), "K3")
P3 = MotifGraph(3, ((0, 1), (1, 2)), "P3")
C4 = MotifGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), "C4")
MOTIFS = {m.name: m for m in (K2, K3, P3, C4)}

# closed forms for w(x, y) = min(x, y)
_MIN_FAMILY = {K2: Fraction(1, 3), K3: Fraction(1, 15), P3: Fraction(2, 15)}


def motif(name_or_motif) -> MotifGraph:
    if isinstance(name_or_motif, MotifGraph):
        return name_or_motif
    try:
        return MOTIFS[name_or_motif]
    except KeyError:
        raise ParameterError(f"unknown motif {name_or_motif!r}; built-ins are {sorted(MOTIFS)}") from None


def _hom_sum(F: MotifGraph, W: np.ndarray):
    """Sum over all maps V(F) -> [k] of prod over edges of W[map(a), map(b)]."""
    k = W.shape[0]
    # closed forms follow the edge orientation (a, b) -> W[a, b], so they agree
    # with the einsum path on asymmetric input too
    if F == K2:
        return W.sum()
    if F == K3:
        return ((W @ W) * W).sum()
    if F == P3:
        return W.sum(axis=0) @ W.sum(axis=1)
    if F == C4:
        return ((W @ W) * (W @ W.T)).sum()
    if float(k) ** F.n > EINSUM_LIMIT:
        raise SizeError(f"hom count enumerates {k}^{F.n} block assignments")
    used = sorted({v for e in F.edges for v in e})
    isolated = F.n - len(used)
    if not F.edges:
        return W.dtype.type(k) ** F.n
    spec = ",".join(_LETTERS[a] + _LETTERS[b] for a, b in F.edges) + "->"
    total = np.einsum(spec, *([W] * F.num_edges), optimize=True)
    return total * W.dtype.type(k) ** isolated


def hom_density_graphon(F, w, resolution: int = MIN_RESOLUTION) -> float:
    """t(F, w) = integral over [0,1]^V(F) of prod over edges of w(x_a, x_b).

    Exact for step graphons and constants.  The ``min`` family uses closed
    forms for K2, K3 and P3 and a ``resolution``-block discretization otherwise.
    """
    F = motif(F)
    if isinstance(w, AnalyticGraphon):
        if w.family == "constant":
            return float(w.p) ** F.num_edges
        if w.family == "grid":
            w = w.grid
        elif F in _MIN_FAMILY:
            return float(_MIN_FAMILY[F])
        else:
            w = w.to_step(resolution)
    if not isinstance(w, StepGraphon):
        w = StepGraphon(np.asarray(w, dtype=float))
    total = float(_hom_sum(F, w.values))
    return total / float(w.k ** F.n)


def hom_density_graph(F, g: Graph) -> float:
    """hom(F, g) / n^|V(F)|, computed in exact integer arithmetic.

    Equal, bit for bit, to ``hom_density_graphon(F, empirical_graphon(g))``.
    """
    F = motif(F)
    if g.n < 1:
        raise ParameterError("graph must have at least one vertex")
    if g.n > 2**20 or (F not in MOTIFS.values() and float(g.n) ** F.n > EINSUM_LIMIT):
        raise SizeError(f"hom count for {F.n}-vertex motif on {g.n} vertices is too large")
    A = g.adjacency().astype(np.int64)
    if F == K2:
        total = int(A.sum())
    elif F == P3:
        d = A.sum(axis=1)
        total = int(d @ d)
    elif F == K3:
        total = int(((A @ A) * A).sum())
    elif F == C4:
        A2 = A @ A
        total = int((A2 * A2).sum())
    else:
        total = int(_hom_sum(F, A))
    return float(total) / float(g.n ** F.n)


def injective_density_graph(F, g: Graph) -> float:
    """Fraction of injective maps V(F) -> V(g) that send edges to edges.

    An unbiased estimator of t(F, w) when g is sampled from w; 0 when g has
    fewer vertices than F.
    """
    F = motif(F)
    n = g.n
    if n < F.n:
        return 0.0
    maps = 1
    for i in range(F.n):
        maps *= n - i
    A = g.adjacency().astype(np.int64)
    d = A.sum(axis=1)
    if F == K2:
        total = int(d.sum())
    elif F == K3:
        total = int(((A @ A) * A).sum())
    elif F == P3:
        total = int((d * (d - 1)).sum())
    elif F == C4:
        A2 = A @ A
        total = int((A2 * A2).sum()) - 2 * int((d * d).sum()) + int(d.sum())
    else:
        if float(n) ** F.n > EINSUM_LIMIT:
            raise SizeError(f"injective count for {F.n}-vertex motif on {n} vertices is too large")
        from itertools import permutations

        adj = A.astype(bool)
        total = sum(all(adj[m[a], m[b]] for a, b in F.edges) for m in permutations(range(n), F.n))
    return float(total) / float(maps)


def degree_projection(w, resolution: int = MIN_RESOLUTION) -> np.ndarray:
    """v(x) = integral of w(x, y) dy, one value per row block (row means)."""
    if isinstance(w, AnalyticGraphon):
        if w.family == "constant":
            return np.array([w.p])
        w = w.grid if w.family == "grid" else w.to_step(resolution)
    if not isinstance(w, StepGraphon):
        w = StepGraphon(np.asarray(w, dtype=float))
    return w.values.mean(axis=1)


def empirical_graphon(g: Graph) -> StepGraphon:
    """n x n step graphon whose blocks copy the adjacency matrix (zero diagonal)."""
    if g.n < 1:
        raise ParameterError("graph must have at least one vertex")
    return StepGraphon(g.adjacency().astype(float), True)
