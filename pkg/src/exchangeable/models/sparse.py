"""The BJR sparse graph model: Aldous-Hoover sampling with edge probabilities scaled by 1/n."""
from __future__ import annotations

import numpy as np

from ..arrays import _check_graph_args, _graph_sample
from ..rng import LATENT_TAG, as_source
from ..structures import Graph


def bjr_sample(w, n: int, rng, return_latents: bool = False):
    """Graph with X_ij ~ Bernoulli(w(U_i, U_j) / n).

    Uses the same latents as :func:`exchangeable.arrays.sample_graph`, so under
    one seed the BJR graph is a bond percolation of the dense sample.
    """
    _check_graph_args(w, n)
    rng = as_source(rng)
    adj, U = _graph_sample(w, n, np.array([rng.base(LATENT_TAG)], dtype=np.uint64), scale=1.0 / n)
    g = Graph.from_adjacency(adj[0], check=False)
    return (g, U[0]) if return_latents else g
