"""Graphons: equal-measure step functions and the named analytic families."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import DomainError, ParameterError, SizeError, ValidationError


def _block_index(x: np.ndarray, k: int) -> np.ndarray:
    # half-open blocks [i/k, (i+1)/k); x == 1 goes to the last block
    return np.minimum((np.asarray(x, dtype=float) * k).astype(np.intp), k - 1)


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """Piecewise-constant function on k x k equal-measure blocks.

    ``values`` may hold entries in [-1, 1] when the object represents a
    difference of graphons (see :meth:`__sub__`); :func:`validate_graphon`
    is the checked constructor for genuine graphons.
    """

    values: np.ndarray
    symmetric: bool = field(default=None)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise ValidationError(f"step graphon needs a non-empty square matrix, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.symmetric is None:
            object.__setattr__(self, "symmetric", bool(np.array_equal(v, v.T)))

    @property
    def k(self) -> int:
        return self.values.shape[0]

    def __call__(self, x, y):
        return self.values[_block_index(x, self.k), _block_index(y, self.k)]

    def __sub__(self, other: "StepGraphon") -> "StepGraphon":
        a, b = common_refinement(self, other)
        return StepGraphon(a.values - b.values)

    def __eq__(self, other):
        return isinstance(other, StepGraphon) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def refine(self, k: int) -> "StepGraphon":
        """Same function on a k x k grid; k must be a multiple of the block count."""
        if k % self.k:
            raise ParameterError(f"cannot refine {self.k} blocks to {k}")
        r = k // self.k
        return StepGraphon(np.repeat(np.repeat(self.values, r, axis=0), r, axis=1), self.symmetric)

    def permute(self, perm) -> "StepGraphon":
        """Apply one block permutation simultaneously to rows and columns."""
        perm = np.asarray(perm)
        return StepGraphon(self.values[np.ix_(perm, perm)], self.symmetric)

    def transpose(self) -> "StepGraphon":
        return StepGraphon(self.values.T)

    def to_step(self, k: int | None = None) -> "StepGraphon":
        return self if k is None else self.refine(k)


@dataclass(frozen=True)
class AnalyticGraphon:
    """Named closed-form graphon: ``constant`` (param p), ``min``, or ``grid`` (a wrapped StepGraphon)."""

    family: str
    p: float = 0.0
    grid: StepGraphon | None = None

    def __post_init__(self):
        if self.family not in ("constant", "min", "grid"):
            raise ParameterError(f"unknown graphon family {self.family!r}")
        if self.family == "constant" and not 0.0 <= self.p <= 1.0:
            raise ValidationError(f"constant graphon value {self.p} outside [0, 1]")
        if self.family == "grid" and self.grid is None:
            raise ParameterError("grid family needs a StepGraphon")

    @property
    def symmetric(self) -> bool:
        return self.grid.symmetric if self.family == "grid" else True

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.family == "constant":
            return np.full(np.broadcast_shapes(x.shape, y.shape), self.p)
        if self.family == "min":
            return np.minimum(x, y)
        return self.grid(x, y)

    def to_step(self, k: int) -> StepGraphon:
        """Block-average approximation on a k x k grid (exact for constant and grid families)."""
        if self.family == "constant":
            return StepGraphon(np.full((k, k), self.p))
        if self.family == "grid":
            return self.grid.refine(k)
        # exact block averages of min(x, y) on [i/k,(i+1)/k) x [j/k,(j+1)/k)
        i = np.arange(k)
        lo = np.minimum.outer(i, i).astype(float)
        vals = (lo + 0.5) / k
        vals[i, i] = (i + 1.0 / 3.0) / k
        return StepGraphon(vals)


def constant(p: float) -> AnalyticGraphon:
    return AnalyticGraphon("constant", float(p))


def min_graphon() -> AnalyticGraphon:
    return AnalyticGraphon("min")


Graphon = StepGraphon | AnalyticGraphon


def validate_graphon(values) -> StepGraphon:
    """Checked constructor: every entry must lie in [0, 1]."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
        raise ValidationError(f"graphon grid must be a non-empty k x k matrix, got shape {v.shape}")
    bad = np.argwhere(~((v >= 0.0) & (v <= 1.0)))
    if len(bad):
        i, j = bad[0]
        raise ValidationError(f"entry ({i}, {j}) = {v[i, j]!r} outside [0, 1]")
    return StepGraphon(v)


def require_symmetric(w) -> None:
    if not w.symmetric:
        vals = w.values if isinstance(w, StepGraphon) else w.grid.values
        i, j = np.argwhere(vals != vals.T)[0]
        raise ValidationError(f"graphon is not symmetric: values[{i}][{j}] != values[{j}][{i}]")


def graphon_eval(w, x, y, zero_diagonal: bool = False):
    """Evaluate ``w`` at ``(x, y)``; coordinates must lie in [0, 1].

    With ``zero_diagonal`` the value on ``x == y`` is 0, the simple-graph convention.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any((xa < 0) | (xa > 1) | np.isnan(xa)) or np.any((ya < 0) | (ya > 1) | np.isnan(ya)):
        raise DomainError("graphon coordinates must lie in [0, 1]")
    out = w(xa, ya)
    if zero_diagonal:
        out = np.where(xa == ya, 0.0, out)
    return float(out) if np.ndim(out) == 0 else out


def common_refinement(w1: StepGraphon, w2: StepGraphon, limit: int | None = None):
    k = w1.k * w2.k // gcd(w1.k, w2.k)
    if limit is not None and k > limit:
        raise SizeError(f"common refinement of {w1.k} and {w2.k} blocks needs {k} > {limit} blocks")
    return w1.refine(k), w2.refine(k)


def parse_graphon_literal(text: str, read_grid=None):
    """``const:<p>``, ``min`` or ``file:<path>`` as used on the command line."""
    if text == "min":
        return min_graphon()
    if text.startswith("const:"):
        try:
            p = float(text[len("const:"):])
        except ValueError:
            raise ValidationError(f"bad constant graphon literal {text!r}") from None
        return constant(p)
    if text.startswith("file:"):
        if read_grid is None:
            from .formats import read_graphon_grid as read_grid
        return read_grid(text[len("file:"):])
    raise ValidationError(f"unknown graphon literal {text!r} (expected const:<p>, min, file:<path>)")
