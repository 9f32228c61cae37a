"""Mondrian process on a rectangle and the Mondrian-based relational model."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import _dists
from ..arrays import BERNOULLI, randomize
from ..errors import ParameterError
from ..rng import LATENT_TAG, as_source, latent_uniforms


@dataclass(frozen=True)
class Cut:
    time: float
    rect: int
    axis: int  # 0 splits the x-interval, 1 splits the y-interval
    position: float


@dataclass
class Floorplan:
    """Guillotine partition of ``domain`` = (x0, x1, y0, y1) into axis-aligned rectangles.

    Rectangles are half-open boxes [x0, x1) x [y0, y1) (closed on the domain's
    upper edges).  Cutting rectangle j keeps the lower piece at index j and
    appends the upper piece, so replaying ``history`` reproduces the ids.
    """

    domain: tuple
    rectangles: list = field(default_factory=list)
    history: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rectangles:
            self.rectangles = [tuple(self.domain)]

    def __len__(self):
        return len(self.rectangles)

    def apply(self, cut: Cut) -> None:
        x0, x1, y0, y1 = self.rectangles[cut.rect]
        if cut.axis == 0:
            if not x0 < cut.position < x1:
                raise ParameterError(f"cut position {cut.position} outside x-interval [{x0}, {x1})")
            lower, upper = (x0, cut.position, y0, y1), (cut.position, x1, y0, y1)
        else:
            if not y0 < cut.position < y1:
                raise ParameterError(f"cut position {cut.position} outside y-interval [{y0}, {y1})")
            lower, upper = (x0, x1, y0, cut.position), (x0, x1, cut.position, y1)
        self.rectangles[cut.rect] = lower
        self.rectangles.append(upper)
        self.history.append(cut)

    def areas(self) -> np.ndarray:
        r = np.array(self.rectangles, dtype=float)
        return (r[:, 1] - r[:, 0]) * (r[:, 3] - r[:, 2])

    def locate(self, x, y) -> np.ndarray:
        """Index of the rectangle containing each point (x, y)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        shape = np.broadcast_shapes(x.shape, y.shape)
        x = np.broadcast_to(x, shape).reshape(-1)
        y = np.broadcast_to(y, shape).reshape(-1)
        X0, X1, Y0, Y1 = self.domain
        if np.any((x < X0) | (x > X1) | (y < Y0) | (y > Y1)):
            raise ParameterError("point outside the floorplan domain")
        r = np.array(self.rectangles, dtype=float)
        out = np.full(x.shape, -1, dtype=np.int64)
        for start in range(0, len(x), 4096):
            xs, ys = x[start:start + 4096, None], y[start:start + 4096, None]
            in_x = (xs >= r[:, 0]) & ((xs < r[:, 1]) | ((r[:, 1] == X1) & (xs == X1)))
            in_y = (ys >= r[:, 2]) & ((ys < r[:, 3]) | ((r[:, 3] == Y1) & (ys == Y1)))
            out[start:start + 4096] = np.argmax(in_x & in_y, axis=1)
        return out.reshape(shape)

    def copy(self) -> "Floorplan":
        return Floorplan(self.domain, list(self.rectangles), list(self.history))


def replay(domain, history, until: float = math.inf) -> Floorplan:
    """Rebuild the floorplan from a cut history, keeping cuts made at or before ``until``."""
    fp = Floorplan(tuple(domain))
    for cut in history:
        if cut.time > until:
            break
        fp.apply(cut)
    return fp


def _check_domain(domain):
    x0, x1, y0, y1 = (float(v) for v in domain)
    if not (x1 > x0 and y1 > y0):
        raise ParameterError(f"degenerate domain {domain!r}")
    return (x0, x1, y0, y1)


def mondrian_sample(budget: float, domain=(0.0, 1.0, 0.0, 1.0), rng=None, max_cuts: int | None = None) -> Floorplan:
    """Run the Mondrian jump chain on ``domain`` until time ``budget``.

    In state {B_j x C_j} the next cut comes after an Exponential wait with
    total rate sum_j (|B_j| + |C_j|); rectangle j is cut with probability
    proportional to |B_j| + |C_j|, along x with probability proportional to
    |B_j|, at a uniform position.  ``max_cuts`` stops the chain early.
    """
    if not budget > 0:
        raise ParameterError(f"budget must be positive, got {budget!r}")
    domain = _check_domain(domain)
    gen = as_source(rng).generator("mondrian")
    fp = Floorplan(domain)
    widths = [domain[1] - domain[0]]
    heights = [domain[3] - domain[2]]
    t = 0.0
    while max_cuts is None or len(fp.history) < max_cuts:
        w = np.array(widths)
        h = np.array(heights)
        rates = w + h
        total = rates.sum()
        t += gen.exponential(1.0 / total)
        if t > budget:
            break
        j = int(np.searchsorted(np.cumsum(rates), gen.random() * total, side="right"))
        j = min(j, len(rates) - 1)
        axis = 0 if gen.random() * rates[j] < w[j] else 1
        x0, x1, y0, y1 = fp.rectangles[j]
        lo, hi = (x0, x1) if axis == 0 else (y0, y1)
        pos = lo + gen.random() * (hi - lo)
        if not lo < pos < hi:
            continue  # measure-zero endpoint draw
        fp.apply(Cut(t, j, axis, pos))
        if axis == 0:
            widths[j] = pos - lo
            widths.append(hi - pos)
            heights.append(heights[j])
        else:
            heights[j] = pos - lo
            heights.append(hi - pos)
            widths.append(widths[j])
    return fp


def beta_psi(a: float = 1.0, b: float = 1.0):
    """psi sampler drawing i.i.d. Beta(a, b) values keyed by rectangle id."""

    def sampler(count, rng):
        return _dists.beta(as_source(rng).uniforms("mondrian-psi", np.arange(count)), a, b)

    return sampler


@dataclass(frozen=True)
class MondrianRelationalSample:
    X: np.ndarray
    floorplan: Floorplan
    U: np.ndarray
    psi: np.ndarray
    rect_ids: np.ndarray


def mondrian_relational_sample(budget: float, psi_sampler=None, n: int = 10, rng=None,
                               margin: float = 1e-6, bernoulli: bool = False) -> MondrianRelationalSample:
    """Array X_ij = psi_r where rectangle r of a Mondrian floorplan contains (-log U_i, -log U_j).

    The plane process is simulated on the window [0, M]^2 with
    M = max_i(-log U_i) + margin, which holds every transformed point.  With
    ``bernoulli=True`` the psi values are treated as link probabilities and
    the returned array is their Bernoulli randomization.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if not margin > 0:
        raise ParameterError(f"margin must be positive, got {margin!r}")
    rng = as_source(rng)
    psi_sampler = psi_sampler or beta_psi()
    U = latent_uniforms(np.uint64(rng.base(LATENT_TAG)), [np.arange(1, n + 1)[:, None]])
    pts = -np.log(U)
    M = float(pts.max()) + margin
    fp = mondrian_sample(budget, (0.0, M, 0.0, M), rng.spawn(0))
    ids = fp.locate(pts[:, None], pts[None, :])
    psi = np.asarray(psi_sampler(len(fp), rng.spawn(1)))
    X = psi[ids]
    if bernoulli:
        X = randomize(X, BERNOULLI, rng, tag="mondrian-x")
    return MondrianRelationalSample(X, fp, U, psi, ids)
