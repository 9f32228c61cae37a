"""Different graphons, same random graph: motif fingerprints, cut distance and block permutations.

Run with ``python3 demos/03_weak_isomorphism.py``.
"""
import numpy as np

from exchangeable.graphons import StepGraphon, constant, min_graphon
from exchangeable.limits import (MOTIFS, cut_distance, cut_norm_exact, degree_projection,
                                 delta_cut_upper, hom_density_graphon)
from exchangeable.rng import RandomSource

# A 4x4 checkerboard that is 1 where the block indices have odd sum, and the
# 2x2 function [[0, 1], [1, 0]].  Relabeling blocks {0, 2} -> first half and
# {1, 3} -> second half maps one onto the other, so both define the same
# random graph: a complete bipartite graph on a fair split.  The constant
# 1/2 has the same degree profile but a different random graph.
w = StepGraphon([[(i + j) % 2 for j in range(4)] for i in range(4)])
w1 = StepGraphon([[0, 1], [1, 0]])
w2 = constant(0.5)

print("motif  checkerboard  bipartite  const 1/2")
for name, F in MOTIFS.items():
    print(f"{name:5s}  {hom_density_graphon(F, w):12.4f}  {hom_density_graphon(F, w1):9.4f}  "
          f"{hom_density_graphon(F, w2):9.4f}")
print("degree projections:", degree_projection(w), degree_projection(w1), degree_projection(w2))

# The cut distance compares functions pointwise up to rectangles, so it sees
# the checkerboard and its collapse as different.  Minimizing over block
# permutations removes the labeling and recovers that they are equivalent.
print(f"\nd_cut(checkerboard, bipartite)       = {cut_distance(w, w1).value:.4f}")
print(f"delta upper bound (permutations)     = {delta_cut_upper(w, w1).value:.4f}")
print(f"d_cut(checkerboard, const 1/2)       = {cut_distance(w, w2).value:.4f}")

# A permuted copy of a 10x10 discretization of min(x, y): pointwise far from
# the original, but the permutation search puts it back.
m = min_graphon().to_step(10)
perm = np.random.default_rng(3).permutation(10)
mp = m.permute(perm)
res = delta_cut_upper(m, mp, rng=RandomSource(0))
print("\nmin graphon on 10 blocks vs a block permutation of it:")
print(f"  d_cut = {cut_distance(m, mp).value:.4f}, delta upper bound = {res.value:.4f}, "
      f"search moves {res.moves}")

# The exact cut norm of a step function enumerates row-block subsets; the
# optimal rectangle is reported together with the value.
D = w.values - 0.5
best = cut_norm_exact(D)
print(f"\n||checkerboard - 1/2||_cut = {best.value} on rows {np.flatnonzero(best.S)} "
      f"x columns {np.flatnonzero(best.T)}")
