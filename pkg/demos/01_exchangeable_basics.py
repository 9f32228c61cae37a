"""Sampling exchangeable graphs, partitions and feature allocations.

Run with ``python3 demos/01_exchangeable_basics.py``.  Every draw is keyed by
a seed, so the printed numbers are the same on every machine.
"""
import numpy as np

from exchangeable.arrays import sample_graph
from exchangeable.features import allocation_from_paintbox, ibp_sample, ibp_stick_breaking
from exchangeable.graphons import constant, min_graphon
from exchangeable.partitions import (PaintboxParam, block_frequencies, crp_sample, dp_stick_breaking,
                                     paintbox_sample)
from exchangeable.rng import RandomSource

src = RandomSource(2024)

# A graph from w(x, y) = min(x, y).  Vertex i carries a latent U_i, and
# vertices with large U_i are better connected, so sorting by U exposes the
# graphon as a gradient in the adjacency matrix.
g, U = sample_graph(min_graphon(), 12, src.spawn(0))
order = np.argsort(U)
print("graph on 12 vertices from the min graphon, rows sorted by latent U:")
for row in g.adjacency()[np.ix_(order, order)]:
    print("  " + "".join("#" if v else "." for v in row))
g400, _ = sample_graph(min_graphon(), 400, src.spawn(8))
print(f"edge density of a 400-vertex sample {g400.num_edges / (400 * 399 / 2):.3f} (graphon value 1/3)\n")

# The same seed always reproduces the same graph, and the first n vertices
# of a larger sample are a sample of size n.
big, _ = sample_graph(constant(0.3), 50, src.spawn(1))
small, _ = sample_graph(constant(0.3), 20, src.spawn(1))
print("projective:", np.array_equal(big.adjacency()[:20, :20], small.adjacency()), "\n")

# Chinese restaurant process and its stick-breaking limit.
p = crp_sample(200, 2.0, src.spawn(2))
print(f"CRP(c=2) on 200 elements: {p.num_blocks} blocks, sizes {sorted(p.block_sizes.tolist(), reverse=True)[:6]} ...")
sticks = dp_stick_breaking(2.0, 1e-6, src.spawn(3))
print(f"DP stick-breaking: {len(sticks.weights)} sticks, largest {np.sort(sticks.weights)[::-1][:3].round(3)}\n")

# Kingman's paint-box: intervals of length 0.5 and 0.3, the rest is dust.
theta = PaintboxParam((0.5, 0.3))
part = paintbox_sample(theta, 10_000, src.spawn(4))
freqs = block_frequencies(part)
print(f"paint-box (0.5, 0.3): largest blocks {freqs[:2].round(3)}, "
      f"singletons {np.sum(part.block_sizes == 1) / part.n:.3f}\n")

# Indian buffet process and the feature paint-box of its stick-breaking form.
f = ibp_sample(100, 2.0, src.spawn(5))
print(f"IBP(gamma=2) on 100 rows: {f.num_features} features (expected 2 * H_100 = 10.37)")
pb = ibp_stick_breaking(1.0, 1e-3, src.spawn(6))
alloc = allocation_from_paintbox(pb, 2000, src.spawn(7))
print(f"feature paint-box with {pb.num_features} features: first inclusion rates "
      f"{alloc.Z.mean(axis=0)[:4].round(3)} vs V {np.round(pb.V[:4], 3)}")
