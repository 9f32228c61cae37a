"""Relational models as exchangeable arrays: IRM, LFRM, Mondrian, eigenmodel and the sparse BJR graph.

Run with ``python3 demos/02_relational_models.py``.
"""
import numpy as np

from exchangeable.graphons import min_graphon
from exchangeable.models import (EigenParams, IrmParams, LfrmParams, beta_psi, bjr_sample,
                                 eigenmodel_sample, irm_sample, lfrm_sample, mondrian_relational_sample,
                                 replay)
from exchangeable.rng import RandomSource

src = RandomSource(7)


def show(X, order_rows=None, order_cols=None):
    X = np.asarray(X)
    if order_rows is not None:
        X = X[np.ix_(order_rows, order_cols)]
    for row in X:
        print("  " + "".join("#" if v else "." for v in row))


# IRM: rows and columns are clustered by independent CRPs and every block
# pair gets its own Beta-distributed link probability.  Sorting rows and
# columns by cluster shows the block structure.
irm = irm_sample(16, 20, IrmParams(c=1.5, c_col=1.5), src.spawn(0))
print(f"IRM: {irm.rows.num_blocks} row clusters, {irm.cols.num_blocks} column clusters")
show(irm.X, np.argsort(irm.rows.labels, kind="stable"), np.argsort(irm.cols.labels, kind="stable"))

# LFRM: rows and columns own overlapping IBP features; the link probability
# is the logistic of the summed weights of the shared feature pairs.
lfrm = lfrm_sample(12, 12, LfrmParams(gamma=1.5, gamma_col=1.5), src.spawn(1))
print(f"\nLFRM: {lfrm.rows.num_features} row features, {lfrm.cols.num_features} column features, "
      f"link probabilities in [{lfrm.theta.min():.2f}, {lfrm.theta.max():.2f}]")

# Mondrian: a random axis-aligned floorplan of the unit square.  Replaying
# the cut history at an earlier time gives a coarser floorplan, which is
# how the budget acts as a resolution knob.
m = mondrian_relational_sample(3.0, beta_psi(1, 1), 10, src.spawn(2))
times = [c.time for c in m.floorplan.history]
print(f"\nMondrian(budget 3): {len(m.floorplan)} rectangles after {len(times)} cuts")
for t in (0.5, 1.5, 3.0):
    print(f"  rectangles alive at time {t}: {len(replay(m.floorplan.domain, m.floorplan.history, t))}")
print("  array values rounded to one digit:")
for row in np.round(m.X, 1):
    print("  " + " ".join(f"{v:.1f}" for v in row))

# Eigenmodel: Laplace embeddings, a random Gaussian Lambda, probit link with
# per-entry Gaussian noise.  Flipping every embedding leaves the kernel unchanged.
e = eigenmodel_sample(10, EigenParams(d=2), src.spawn(3))
print(f"\neigenmodel: kernel invariant under x -> -x: "
      f"{np.array_equal(-e.embeddings @ e.Lambda @ -e.embeddings.T, e.G)}, density {e.X.sum() / 90:.2f}")

# Dense graphs from a graphon have order n^2 edges; the BJR rescaling w/n
# keeps the edge count linear in n.
for n in (500, 2000, 8000):
    g = bjr_sample(min_graphon(), n, src.spawn(10 + n))
    print(f"BJR n={n:5d}: {g.num_edges:5d} edges, edges per vertex {g.num_edges / n:.3f}")
