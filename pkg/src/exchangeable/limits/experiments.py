"""Drivers for the convergence and concentration experiments on sampled graphs."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from math import sqrt
from typing import Callable

import numpy as np

from ..arrays import sample_graphs
from ..errors import ParameterError, SizeError
from ..graphons import AnalyticGraphon, StepGraphon
from ..rng import as_source
from ..structures import Graph
from .cutnorm import cut_distance
from .homomorphism import (K2, hom_density_graph, hom_density_graphon, injective_density_graph,
                           motif)

CSV_FIELDS = ("n", "motif", "mean_estimate", "target", "mean_abs_error", "std_error", "trials")
MAX_EXPERIMENT_CELLS = 2 * 10**8


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    motif: str
    mean_estimate: float
    target: float
    mean_abs_error: float
    std_error: float
    trials: int
    median_abs_error: float

    def as_csv(self) -> dict:
        return {f: getattr(self, f) for f in CSV_FIELDS}


ESTIMATORS = {"injective": injective_density_graph, "hom": hom_density_graph}


def _densities(F, adj: np.ndarray, estimator) -> np.ndarray:
    return np.array([estimator(F, Graph.from_adjacency(a, check=False)) for a in adj])


def _row(n, name, estimates, target, errors, trials):
    return ConvergenceRow(n, name, float(np.mean(estimates)), float(target), float(np.mean(errors)),
                          float(np.std(errors, ddof=1) / sqrt(trials)) if trials > 1 else 0.0,
                          trials, float(np.median(errors)))


def sorted_cut_distance(adj: np.ndarray, U: np.ndarray, w: StepGraphon, restarts: int = 10,
                        rng=None) -> float:
    """d(empirical graphon with vertices ordered by latent U, w)."""
    order = np.argsort(U, kind="stable")
    emp = StepGraphon(adj[np.ix_(order, order)].astype(float), True)
    return float(cut_distance(emp, w, restarts=restarts, rng=rng, limit=10**5))


def convergence_experiment(w, n_list, motifs=("K2",), trials: int = 200, rng=None,
                           cut: bool | None = None, cut_trials: int | None = None,
                           cut_restarts: int = 10, estimator: str = "injective") -> list[ConvergenceRow]:
    """Sample ``trials`` graphs per n and compare motif densities with t(F, w).

    The default estimator is the injective density, which is unbiased for
    t(F, w); ``estimator="hom"`` uses the homomorphism density of the sample,
    which is biased by O(1/n).  For step graphons (including the ``grid``
    family) a ``cut`` row reports the cut distance between w and the
    empirical graphon with vertices sorted by their latent U, over the first
    ``cut_trials`` replicates.
    """
    if estimator not in ESTIMATORS:
        raise ParameterError(f"unknown estimator {estimator!r}; choose from {sorted(ESTIMATORS)}")
    density = ESTIMATORS[estimator]
    if int(trials) != trials or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    src = as_source(rng)
    Fs = [motif(m) for m in motifs]
    step = w.grid if isinstance(w, AnalyticGraphon) and w.family == "grid" else w
    if cut is None:
        cut = isinstance(step, StepGraphon)
    if cut and not isinstance(step, StepGraphon):
        raise ParameterError("the sorted cut distance needs a step graphon")
    targets = [hom_density_graphon(F, w) for F in Fs]
    rows = []
    for idx, n in enumerate(n_list):
        if int(n) != n or n < 1:
            raise ParameterError(f"graph sizes must be positive integers, got {n!r}")
        if trials * n * n > MAX_EXPERIMENT_CELLS:
            raise SizeError(f"{trials} graphs on {n} vertices exceed the experiment memory guard")
        adj, U = sample_graphs(w, int(n), trials, src.spawn(idx))
        for F, target in zip(Fs, targets):
            est = _densities(F, adj, density)
            rows.append(_row(int(n), F.name or "custom", est, target, np.abs(est - target), trials))
        if cut:
            m = trials if cut_trials is None else min(cut_trials, trials)
            d = np.array([sorted_cut_distance(adj[t], U[t], step, cut_restarts, src.spawn(10**6 + t))
                          for t in range(m)])
            rows.append(_row(int(n), "cut", d, 0.0, d, m))
    return rows


def write_csv(rows, path_or_file) -> None:
    """Write experiment rows with the fixed header; reals use 17 significant digits."""
    def fmt(v):
        return format(v, ".17g") if isinstance(v, float) else v

    def emit(fh):
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(CSV_FIELDS)
        for r in rows:
            wr.writerow([fmt(getattr(r, f)) for f in CSV_FIELDS])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def edge_density(g: Graph) -> float:
    """t(K2, g); 1-Lipschitz in cut distance."""
    return hom_density_graph(K2, g)


@dataclass(frozen=True)
class ConcentrationReport:
    k: int
    trials: int
    band: float
    center: float
    exceedances: int
    frequency: float
    tail_bound: float
    slack: float
    values: np.ndarray

    @property
    def within_bound(self) -> bool:
        return self.frequency <= self.tail_bound + self.slack


def subsample_indices(n: int, k: int, trials: int, rng) -> np.ndarray:
    """Uniform k-subsets of range(n), one per row, by ranking keyed uniforms."""
    src = as_source(rng)
    u = src.uniforms("subsample", np.arange(trials)[:, None], np.arange(n)[None, :])
    return np.sort(np.argsort(u, axis=1, kind="stable")[:, :k], axis=1)


def concentration_check(statistic: Callable[[Graph], float], g: Graph, k: int, trials: int,
                        rng=None, band: float | None = None) -> ConcentrationReport:
    """Tail frequency of |f(G(k, g)) - f_0| > band over random k-vertex induced subgraphs.

    f_0 is the empirical median and the default band is 20/sqrt(k).  The
    reference tail bound is 2^-k, with 3 binomial standard deviations of
    slack.  The statistic must be 1-Lipschitz in cut distance; that is the
    caller's contract and is not checked.
    """
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    if k > g.n:
        raise ParameterError(f"sample size k = {k} exceeds n = {g.n}")
    if int(trials) != trials or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    band = 20.0 / sqrt(k) if band is None else float(band)
    idx = subsample_indices(g.n, k, trials, rng)
    vals = np.array([statistic(g.induced(row)) for row in idx], dtype=float)
    center = float(np.median(vals))
    exceed = int(np.sum(np.abs(vals - center) > band))
    bound = 2.0 ** -k
    slack = 3.0 * sqrt(bound * (1.0 - bound) / trials)
    return ConcentrationReport(int(k), int(trials), band, center, exceed, exceed / trials,
                               bound, slack, vals)
