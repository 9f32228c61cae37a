"""Aldous-Hoover style sampling engines for exchangeable sequences, graphs and d-arrays.

All latent uniforms are keyed through :mod:`exchangeable.rng`, with array
positions mapped to the positive indices 1, 2, ...  (index 0 is reserved
for the empty class of a zero-padded vector).  The latent of a key never
depends on the requested shape, so every sampler here is projective: the
leading sub-array of a larger sample equals the smaller sample bit for bit.

Latent arguments of an array function are ordered by the non-empty subsets
I of the dimensions, sorted by size and then lexicographically:
d=2 gives (I={1}, {2}, {1,2}), d=3 gives ({1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}).
"""
from __future__ import annotations

import inspect
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .errors import ParameterError, ValidationError
from .graphons import require_symmetric
from .rng import (
    LATENT_TAG,
    _absorb,
    as_source,
    keyed_uniforms,
    latent_uniforms,
    to_unit,
)
from .structures import Graph

MAX_DIM = 4


def subsets(d: int) -> list[tuple[int, ...]]:
    """Non-empty subsets of range(d) in (size, lexicographic) order."""
    return [c for r in range(1, d + 1) for c in combinations(range(d), r)]


@dataclass(frozen=True)
class ArrayFunction:
    """Vectorized function of the latent arguments of one array entry.

    ``func`` receives ``arity`` broadcastable arrays, one per latent argument,
    and returns the entry values.
    """

    func: Callable
    arity: int

    def __call__(self, *args):
        return self.func(*args)


def _as_array_function(f, arity: int) -> ArrayFunction:
    if isinstance(f, ArrayFunction):
        if f.arity != arity:
            raise ParameterError(f"array function has arity {f.arity}, engine needs {arity}")
        return f
    try:
        params = inspect.signature(f).parameters.values()
    except (TypeError, ValueError):
        return ArrayFunction(f, arity)
    if any(p.kind == p.VAR_POSITIONAL for p in params):
        return ArrayFunction(f, arity)
    positional = [p for p in params if p.kind in (p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD)]
    required = [p for p in positional if p.default is p.empty]
    if not len(required) <= arity <= len(positional):
        raise ParameterError(f"array function takes {len(positional)} arguments, engine needs {arity}")
    return ArrayFunction(f, arity)


def _evaluate(f: ArrayFunction, args, shape) -> np.ndarray:
    out = np.asarray(f(*args))
    return np.ascontiguousarray(np.broadcast_to(out, shape))


def _check_shape(shape, d=None):
    shape = tuple(int(s) for s in shape)
    if any(s < 1 for s in shape):
        raise ParameterError(f"array shape must be positive, got {shape}")
    if d is not None and len(shape) != d:
        raise ParameterError(f"shape {shape} does not have {d} dimensions")
    if not 1 <= len(shape) <= MAX_DIM:
        raise ParameterError(f"dimension {len(shape)} outside supported range 1..{MAX_DIM}")
    return shape


def _grids(shape):
    d = len(shape)
    return [np.arange(1, s + 1).reshape([-1 if a == i else 1 for a in range(d)]) for i, s in enumerate(shape)]


def _sorted_stack(arrays):
    arrays = np.broadcast_arrays(*arrays)
    return np.sort(np.stack(arrays, axis=-1), axis=-1)


# ---------------------------------------------------------------------------
# sequences


def sample_sequence_inverse_cdf(F: Callable, n: int, rng) -> np.ndarray:
    """(F(U_1), ..., F(U_n)) with U_i i.i.d. uniform; F maps [0, 1] to the value space."""
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    u = as_source(rng).uniforms("sequence", np.arange(1, n + 1))
    try:
        out = np.asarray(F(u))
        if out.shape[:1] == (n,):
            return out
    except (TypeError, ValueError):
        pass
    return np.array([F(float(x)) for x in u])


# ---------------------------------------------------------------------------
# graphs


def _vertex_latents(bases, n):
    return latent_uniforms(bases, [np.arange(1, n + 1)[None, :, None]])


def _graph_sample(w, n, bases, scale=1.0):
    """Adjacency (T, n, n) and vertex latents (T, n) for an array of stream bases."""
    bases = np.asarray(bases, dtype=np.uint64).reshape(-1, 1)
    T = bases.shape[0]
    U = _vertex_latents(bases, n)
    adj = np.zeros((T, n, n), dtype=bool)
    # pair key {i, j} with i < j hashes the chain [1 class, size 2, i, j]
    prefix = _absorb(_absorb(bases, np.array([1])), np.array([2]))
    rows = _absorb(prefix, np.arange(1, n + 1)[None, :])
    cols = np.arange(1, n + 1)
    for i in range(n - 1):
        u_pair = to_unit(_absorb(rows[:, i:i + 1], cols[None, i + 1:]))
        p = w(U[:, i:i + 1], U[:, i + 1:])
        if scale != 1.0:
            p = p * scale
        e = u_pair < p
        adj[:, i, i + 1:] = e
        adj[:, i + 1:, i] = e
    return adj, U


def _check_graph_args(w, n):
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    require_symmetric(w)


def sample_graph(w, n: int, rng) -> tuple[Graph, np.ndarray]:
    """Exchangeable simple graph from graphon ``w``.

    Vertex i gets latent U_i; pair i < j is an edge iff U_{ij} < w(U_i, U_j).
    Returns the graph and the vertex latents.
    """
    _check_graph_args(w, n)
    rng = as_source(rng)
    adj, U = _graph_sample(w, n, np.array([rng.base(LATENT_TAG)], dtype=np.uint64))
    return Graph.from_adjacency(adj[0], check=False), U[0]


def sample_graphs(w, n: int, trials: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """``trials`` independent graphs as a boolean array (trials, n, n) plus latents (trials, n).

    Replicate t equals ``sample_graph(w, n, rng.spawn(t))``.
    """
    _check_graph_args(w, n)
    return _graph_sample(w, n, as_source(rng).spawn_bases(trials, LATENT_TAG))


# ---------------------------------------------------------------------------
# two-dimensional arrays


def sample_joint_2array(f, n: int, rng) -> np.ndarray:
    """X_ij = f(U_i, U_j, U_{i,j}) where U_{i,j} is keyed by the multiset {i, j}."""
    f = _as_array_function(f, 3)
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    idx = np.arange(1, n + 1)
    U = latent_uniforms(base, [idx[:, None]])
    lo = np.minimum.outer(idx, idx)
    hi = np.maximum.outer(idx, idx)
    pair = latent_uniforms(base, [np.stack([lo, hi], axis=-1)])
    return _evaluate(f, (U[:, None], U[None, :], pair), (n, n))


def sample_separate_2array(f, n: int, m: int, rng) -> np.ndarray:
    """X_ij = f(U^row_i, U^col_j, U_ij) with the cell latent keyed by the ordered pair (i, j)."""
    f = _as_array_function(f, 3)
    shape = _check_shape((n, m), 2)
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    rows = np.arange(1, shape[0] + 1)[:, None, None]
    cols = np.arange(1, shape[1] + 1)[None, :, None]
    empty = np.zeros((1, 1, 0), dtype=np.int64)
    u_row = latent_uniforms(base, [rows, empty])
    u_col = latent_uniforms(base, [empty, cols])
    u_cell = latent_uniforms(base, [rows, cols])
    return _evaluate(f, (u_row, u_col, u_cell), shape)


def separate_from_joint(f, n: int, m: int, rng) -> np.ndarray:
    """Separately exchangeable n x m array built from the joint engine's latents.

    Rows use the odd indices 1, 3, 5, ... and columns the even indices 2, 4,
    ...; because the two index sets are disjoint, every cell gets its own
    pair latent and the result has the separately exchangeable law.
    """
    f = _as_array_function(f, 3)
    shape = _check_shape((n, m), 2)
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    r = 2 * np.arange(shape[0]) + 1
    c = 2 * np.arange(shape[1]) + 2
    u_r = latent_uniforms(base, [r[:, None]])
    u_c = latent_uniforms(base, [c[:, None]])
    lo = np.minimum.outer(r, c)
    hi = np.maximum.outer(r, c)
    pair = latent_uniforms(base, [np.stack([lo, hi], axis=-1)])
    return _evaluate(f, (u_r[:, None], u_c[None, :], pair), shape)


# ---------------------------------------------------------------------------
# d-arrays


def sample_joint_darray(f, d: int, shape, rng) -> np.ndarray:
    """Jointly exchangeable d-array: argument I of entry k is U keyed by the multiset {k_i : i in I}."""
    if not 1 <= d <= MAX_DIM:
        raise ParameterError(f"dimension {d} outside supported range 1..{MAX_DIM}")
    shape = _check_shape(shape, d)
    f = _as_array_function(f, 2 ** d - 1)
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    grids = _grids(shape)
    args = [latent_uniforms(base, [_sorted_stack([grids[i] for i in I])]) for I in subsets(d)]
    return _evaluate(f, args, shape)


def sample_separate_darray(f, d: int, shape, rng) -> np.ndarray:
    """Separately exchangeable d-array: argument I is U keyed by the zero-padded vector k_I."""
    if not 1 <= d <= MAX_DIM:
        raise ParameterError(f"dimension {d} outside supported range 1..{MAX_DIM}")
    shape = _check_shape(shape, d)
    f = _as_array_function(f, 2 ** d - 1)
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    grids = _grids(shape)
    empty = np.zeros((1,) * d + (0,), dtype=np.int64)
    args = []
    for I in subsets(d):
        classes = [grids[i][..., None] if i in I else empty for i in range(d)]
        args.append(latent_uniforms(base, classes))
    return _evaluate(f, args, shape)


def canonical_dim_partition(pi, d: int) -> tuple[tuple[int, ...], ...]:
    """Validate a partition of range(d) and order its classes by smallest element."""
    try:
        classes = [tuple(sorted(int(i) for i in c)) for c in pi]
    except TypeError:
        raise ValidationError(f"partition {pi!r} must be a collection of collections") from None
    flat = [i for c in classes for i in c]
    if any(not c for c in classes) or sorted(flat) != list(range(d)):
        raise ValidationError(f"{pi!r} is not a partition of the dimensions 0..{d - 1}")
    return tuple(sorted(classes))


def sample_pi_darray(f, pi, shape, rng) -> np.ndarray:
    """pi-exchangeable d-array.

    ``pi`` partitions the dimensions 0..d-1.  Argument I of entry k is the
    latent keyed by the generalized vector that maps each class J to the
    multiset {k_i : i in I and J}.
    """
    shape = _check_shape(shape)
    d = len(shape)
    classes = canonical_dim_partition(pi, d)
    f = _as_array_function(f, 2 ** d - 1)
    base = np.uint64(as_source(rng).base(LATENT_TAG))
    grids = _grids(shape)
    empty = np.zeros((1,) * d + (0,), dtype=np.int64)
    args = []
    for I in subsets(d):
        key = []
        for J in classes:
            dims = [i for i in J if i in I]
            key.append(_sorted_stack([grids[i] for i in dims]) if dims else empty)
        args.append(latent_uniforms(base, key))
    return _evaluate(f, args, shape)


def sample_simple_darray(f, pi, shape, rng) -> np.ndarray:
    """Simple array: entry k is f(U^{pi_1}_{k_1}, ..., U^{pi_d}_{k_d}).

    Dimensions in the same class of ``pi`` read the same latent sequence.
    """
    shape = _check_shape(shape)
    d = len(shape)
    classes = canonical_dim_partition(pi, d)
    f = _as_array_function(f, d)
    rng = as_source(rng)
    grids = _grids(shape)
    cls_of = {i: c for c, J in enumerate(classes) for i in J}
    args = [rng.uniforms("simple-latent", cls_of[i], grids[i]) for i in range(d)]
    return _evaluate(f, args, shape)


# ---------------------------------------------------------------------------
# randomization


@dataclass(frozen=True)
class RandomizationKernel:
    """Family of distributions P_theta, sampled by inverse transform.

    ``draw(theta, u)`` maps parameters and uniforms of shape
    ``theta.shape + (n_uniforms,)`` to samples; ``valid(theta)`` flags the
    parameters where the family is defined.
    """

    name: str
    draw: Callable
    n_uniforms: int = 1
    valid: Callable | None = None


def _bernoulli_draw(theta, u):
    return (u[..., 0] < theta).astype(np.int8)


BERNOULLI = RandomizationKernel("bernoulli", _bernoulli_draw, 1, lambda t: (t >= 0) & (t <= 1))


def gaussian_kernel(sd: float) -> RandomizationKernel:
    from ._dists import normal

    return RandomizationKernel("gaussian", lambda t, u: normal(u[..., 0], t, sd), 1, np.isfinite)


def noisy_link_kernel(mean: float, var: float, link: str = "probit") -> RandomizationKernel:
    """Binary family with P{1} = E sigma(r + xi), xi ~ N(mean, var); sampled by drawing xi per entry."""
    from ._dists import LINKS, normal

    if not var > 0:
        raise ParameterError(f"noise variance must be positive, got {var!r}")
    sigma = LINKS[link]

    def draw(r, u):
        xi = normal(u[..., 0], mean, np.sqrt(var))
        return (u[..., 1] < sigma(r + xi)).astype(np.int8)

    return RandomizationKernel(f"noisy-{link}", draw, 2, np.isfinite)


def randomize(theta_array, kernel: RandomizationKernel, rng, tag: str = "randomize") -> np.ndarray:
    """Entries drawn independently given ``theta_array``, entry k from P_{theta_k}.

    Uniforms are keyed by the entry's multi-index, so randomizing a leading
    sub-array reproduces the leading block of the full result.
    """
    theta = np.asarray(theta_array)
    if kernel.valid is not None:
        ok = np.asarray(kernel.valid(theta), dtype=bool)
        if not ok.all():
            bad = theta[np.unravel_index(int(np.flatnonzero(~ok.reshape(-1))[0]), theta.shape)]
            raise ParameterError(f"kernel {kernel.name!r} is undefined at theta={bad!r}")
    rng = as_source(rng)
    grids = _grids(theta.shape) if theta.ndim else []
    slot = np.arange(kernel.n_uniforms)
    counters = [theta.ndim] + [g[..., None] for g in grids] + [slot]
    u = keyed_uniforms(np.uint64(rng.base(tag)), counters)
    u = np.broadcast_to(u, theta.shape + (kernel.n_uniforms,))
    return kernel.draw(theta, u)
