"""Finite combinatorial structures: graphs, partitions, feature allocations."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


class Graph:
    """Finite simple graph stored as a bit-packed symmetric adjacency matrix.

    Build from a boolean adjacency matrix (:meth:`from_adjacency`) or an edge
    list (:meth:`from_edges`).  The diagonal is always zero.
    """

    __slots__ = ("n", "_bits")

    def __init__(self, n: int, bits: np.ndarray):
        self.n = int(n)
        self._bits = bits
        self._bits.setflags(write=False)

    @classmethod
    def from_adjacency(cls, adj, check: bool = True) -> "Graph":
        a = np.asarray(adj).astype(bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"adjacency must be square, got shape {a.shape}")
        if check:
            if a.diagonal().any():
                i = int(np.flatnonzero(a.diagonal())[0])
                raise ValidationError(f"self-loop at vertex {i}")
            if not np.array_equal(a, a.T):
                i, j = np.argwhere(a != a.T)[0]
                raise ValidationError(f"adjacency not symmetric at ({i}, {j})")
        return cls(a.shape[0], np.packbits(a, axis=1))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise ValidationError(f"edge endpoint outside 0..{n - 1}")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValidationError("self-loops are not allowed")
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        return cls(n, np.packbits(a, axis=1))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_adjacency(~np.eye(n, dtype=bool))

    def adjacency(self) -> np.ndarray:
        return np.unpackbits(self._bits, axis=1, count=self.n).astype(bool)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self._bits[i, j >> 3] >> (7 - (j & 7))) & 1)

    def edges(self) -> np.ndarray:
        """Edges (i, j) with i < j in lexicographic order."""
        i, j = np.nonzero(np.triu(self.adjacency(), 1))
        return np.column_stack([i, j])

    @property
    def num_edges(self) -> int:
        return int(np.unpackbits(self._bits, axis=1, count=self.n).sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def induced(self, vertices) -> "Graph":
        v = np.asarray(vertices)
        return Graph.from_adjacency(self.adjacency()[np.ix_(v, v)], check=False)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self._bits, other._bits)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True, eq=False)
class Partition:
    """Block labels of {0..n-1}; ids are dense, 0..B-1."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels, dtype=np.int64).copy()
        if lab.ndim != 1:
            raise ValidationError("partition labels must be one-dimensional")
        if len(lab) and (lab.min() < 0 or set(np.unique(lab)) != set(range(int(lab.max()) + 1))):
            raise ValidationError("partition block ids must be dense 0..B-1")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return int(self.labels.max()) + 1 if self.n else 0

    @property
    def block_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.num_blocks)

    def blocks(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == b) for b in range(self.num_blocks)]

    def canonical(self) -> tuple:
        """Labels relabeled by order of first appearance; equal for equal set partitions."""
        seen: dict[int, int] = {}
        return tuple(seen.setdefault(int(x), len(seen)) for x in self.labels)

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)


@dataclass(frozen=True, eq=False)
class FeatureAllocation:
    """Binary ownership matrix ``Z`` (n x K): element i owns feature k iff Z[i, k]."""

    Z: np.ndarray = field()

    def __post_init__(self):
        z = np.asarray(self.Z, dtype=bool)
        if z.ndim != 2:
            raise ValidationError("feature matrix must be two-dimensional")
        z = z.copy()
        z.setflags(write=False)
        object.__setattr__(self, "Z", z)

    @property
    def n(self) -> int:
        return self.Z.shape[0]

    @property
    def num_features(self) -> int:
        return self.Z.shape[1]

    def features_of(self, i: int) -> tuple[int, ...]:
        return tuple(int(k) for k in np.flatnonzero(self.Z[i]))

    def counts(self) -> np.ndarray:
        return self.Z.sum(axis=1)

    def pattern_counts(self) -> dict[frozenset, int]:
        """Number of features owned by exactly each subset of elements."""
        out: dict[frozenset, int] = {}
        for col in self.Z.T:
            key = frozenset(int(i) for i in np.flatnonzero(col))
            out[key] = out.get(key, 0) + 1
        return out

    def __eq__(self, other):
        return isinstance(other, FeatureAllocation) and np.array_equal(self.Z, other.Z)
