"""Cut norm, cut distance, and permutation-based upper bounds on the cut pseudometric.

For a step function on equal blocks the integral over S x T is linear in
the measure S and T put on each block, so its supremum over measurable
sets is attained at a vertex of the box [0,1]^k x [0,1]^k, i.e. on unions
of whole blocks.  That reduces the exact cut norm to a search over row
subsets; for a fixed row subset the best column subset keeps exactly the
columns with positive partial sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..errors import ParameterError, SizeError
from ..graphons import AnalyticGraphon, StepGraphon, common_refinement
from ..rng import as_source

EXACT_LIMIT = 22
REFINEMENT_LIMIT = 2048
_CHUNK = 1 << 15


@dataclass(frozen=True)
class CutNormResult:
    """Value of the cut norm plus the maximizing row/column block masks."""

    value: float
    S: np.ndarray
    T: np.ndarray
    exact: bool

    def __float__(self):
        return float(self.value)


def as_step(w, k: int | None = None) -> StepGraphon:
    """Step representation of ``w``; the ``min`` family needs a resolution ``k``."""
    if isinstance(w, StepGraphon):
        return w if k is None or k == w.k else w.refine(k)
    if isinstance(w, AnalyticGraphon):
        if w.family == "constant":
            return w.to_step(k or 1)
        if w.family == "grid":
            return w.grid if k is None else w.grid.refine(k)
        if k is None:
            raise ParameterError("the min family has no exact step form; pass a grid resolution")
        return w.to_step(k)
    arr = np.asarray(w, dtype=float)
    return StepGraphon(arr)


def _matrix(w) -> np.ndarray:
    if isinstance(w, (StepGraphon, AnalyticGraphon)):
        return as_step(w).values
    D = np.asarray(w, dtype=float)
    if D.ndim != 2:
        raise ParameterError("cut norm needs a matrix or step function")
    return D


def _rect_value(D, S, T) -> float:
    # correctly rounded sum, so constant blocks give their value exactly
    return abs(math.fsum(D[np.ix_(S, T)].ravel())) / D.size


def cut_norm_exact(w, signed: bool = True) -> CutNormResult:
    """Exact cut norm of a step function with at most 22 blocks per side.

    ``signed=True`` maximizes |integral over S x T| (the norm used for
    differences); ``signed=False`` maximizes the plain integral.
    """
    D = _matrix(w)
    transposed = D.shape[0] > D.shape[1]
    if transposed:
        D = D.T
    k1, k2 = D.shape
    if k1 > EXACT_LIMIT:
        raise SizeError(f"exact cut norm enumerates 2^{k1} subsets; limit is {EXACT_LIMIT} blocks "
                        "(use cut_norm_heuristic)")
    shifts = np.arange(k1, dtype=np.int64)
    signs = (1.0, -1.0) if signed else (1.0,)
    best = (-1.0, None, None)
    for start in range(0, 1 << k1, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << k1), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(float)
        cs = bits @ D
        for sgn in signs:
            gains = np.clip(sgn * cs, 0.0, None).sum(axis=1)
            i = int(np.argmax(gains))
            if gains[i] > best[0]:
                best = (gains[i], bits[i].astype(bool), (sgn * cs[i]) > 0)
    _, S, T = best
    if transposed:
        S, T = T, S
        D = D.T
    return CutNormResult(_rect_value(D, S, T), S, T, True)


def cut_norm_heuristic(w, restarts: int = 50, rng=None, signed: bool = True) -> CutNormResult:
    """Lower bound on the cut norm by alternating maximization from random starts.

    With S fixed the best T is the set of columns with positive partial sum
    and vice versa; alternating the two steps never decreases the objective
    and stops at a fixpoint.  The first start of each sign uses all rows.
    """
    D = _matrix(w)
    gen = as_source(rng).generator("cut-norm-heuristic")
    k1 = D.shape[0]
    best = (-1.0, None, None)
    for sgn in ((1.0, -1.0) if signed else (1.0,)):
        M = sgn * D
        for r in range(max(1, restarts)):
            if r == 0:
                S = np.ones(k1, dtype=bool)
            else:
                S = gen.random(k1) < 0.5
                if not S.any():
                    S[gen.integers(k1)] = True
            val = -np.inf
            while True:
                T = S.astype(float) @ M > 0
                rows = M @ T.astype(float)
                S_new = rows > 0
                new_val = float(rows[S_new].sum())
                if new_val <= val:
                    break
                S, val = S_new, new_val
            if val > best[0]:
                best = (val, S, T)
    _, S, T = best
    return CutNormResult(_rect_value(D, S, T), S, T, False)


def cut_norm(w, restarts: int = 50, rng=None, signed: bool = True) -> CutNormResult:
    """Exact when both sides have at most 22 blocks, heuristic otherwise."""
    D = _matrix(w)
    if min(D.shape) <= EXACT_LIMIT:
        return cut_norm_exact(D, signed)
    return cut_norm_heuristic(D, restarts, rng, signed)


def cut_distance(w1, w2, restarts: int = 50, rng=None, limit: int = REFINEMENT_LIMIT,
                 resolution: int | None = None) -> CutNormResult:
    """d(w1, w2) = cut norm of w1 - w2 on their common block refinement.

    ``resolution`` discretizes analytic (``min``) graphons.  The result's
    ``exact`` flag tells whether the exact solver was used.
    """
    a, b = common_refinement(as_step(w1, resolution), as_step(w2, resolution), limit)
    return cut_norm(a.values - b.values, restarts, rng)


@dataclass(frozen=True)
class DeltaResult:
    value: float
    permutation: np.ndarray
    exhaustive: bool
    exact_norm: bool
    moves: int

    def __float__(self):
        return float(self.value)


def delta_cut_upper(w1, w2, effort: int = 10_000, rng=None, exhaustive_limit: int = 8,
                    limit: int = REFINEMENT_LIMIT, restarts: int = 20) -> DeltaResult:
    """Upper bound on the cut pseudometric: min over block permutations of d(w1, w2 o perm).

    Permutations act on rows and columns of w2 simultaneously.  Up to
    ``exhaustive_limit`` blocks every permutation is tried; beyond that a swap
    local search on the squared L2 mismatch, seeded by sorting both graphons'
    blocks by degree, proposes candidates whose cut distance is then
    evaluated.  ``effort`` caps the number of proposed swaps.
    """
    a, b = common_refinement(as_step(w1), as_step(w2), limit)
    A, B = a.values, b.values
    k = A.shape[0]
    exact = k <= EXACT_LIMIT
    src = as_source(rng)

    def dist(perm):
        D = A - B[np.ix_(perm, perm)]
        return float(cut_norm(D, restarts, src.spawn(0)))

    identity = np.arange(k)
    best_val, best_perm = dist(identity), identity
    if best_val == 0.0:
        return DeltaResult(0.0, identity, k <= exhaustive_limit, exact, 0)

    if k <= exhaustive_limit:
        for p in permutations(range(k)):
            p = np.array(p)
            v = dist(p)
            if v < best_val:
                best_val, best_perm = v, p
                if v == 0.0:
                    break
        return DeltaResult(best_val, best_perm, True, exact, 0)

    gen = src.generator("delta-cut-search")

    def mismatch(perm):
        return float(((A - B[np.ix_(perm, perm)]) ** 2).sum())

    # degree alignment: block ranked r-th by degree in w1 receives the block ranked r-th in w2
    order_a = np.argsort(A.mean(axis=1), kind="stable")
    order_b = np.argsort(B.mean(axis=1), kind="stable")
    aligned = np.empty(k, dtype=np.int64)
    aligned[order_a] = order_b
    starts = [aligned]
    moves = 0
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    while moves < effort:
        perm = starts.pop() if starts else gen.permutation(k)
        cur = mismatch(perm)
        improved = True
        while improved and moves < effort and cur > 0.0:
            improved = False
            for idx in gen.permutation(len(pairs)):
                if moves >= effort:
                    break
                i, j = pairs[idx]
                cand = perm.copy()
                cand[i], cand[j] = cand[j], cand[i]
                moves += 1
                m = mismatch(cand)
                if m < cur:
                    perm, cur, improved = cand, m, True
        v = dist(perm)
        if v < best_val:
            best_val, best_perm = v, perm
        if best_val == 0.0:
            break
    return DeltaResult(best_val, best_perm, False, exact, moves)
