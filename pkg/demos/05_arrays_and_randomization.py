"""Exchangeable arrays beyond graphs: joint, separate and mixed symmetry, d-arrays and randomization.

Run with ``python3 demos/05_arrays_and_randomization.py``.
"""
import numpy as np

from exchangeable.arrays import (gaussian_kernel, randomize, sample_joint_2array, sample_joint_darray,
                                 sample_pi_darray, sample_separate_2array, sample_sequence_inverse_cdf,
                                 sample_simple_darray)
from exchangeable.rng import RandomSource

src = RandomSource(5)

# An exchangeable sequence is F(U_1), F(U_2), ... for a fixed F; here F is
# the exponential quantile function.
x = sample_sequence_inverse_cdf(lambda u: -np.log1p(-u), 10_000, src.spawn(0))
print(f"sequence through the exponential quantile: mean {x.mean():.3f}, var {x.var():.3f}\n")

# 2-arrays take f(row latent, column latent, pair latent).  In the joint
# engine the pair latent is shared by (i, j) and (j, i), so a symmetric f
# gives a symmetric array; in the separate engine rows and columns have
# their own latents and no symmetry is implied.
f = lambda a, b, c: np.round(a * b + 0.1 * c, 2)  # noqa: E731
J = sample_joint_2array(f, 4, src.spawn(1))
S = sample_separate_2array(f, 4, 5, src.spawn(1))
print("joint 4x4 (symmetric off the diagonal):")
print(J)
print("separate 4x5:")
print(S, "\n")

# d-arrays take 2^d - 1 latents, one per non-empty subset of the index
# positions, ordered by size and then lexicographically.  With d = 3 that is
# U_i, U_j, U_k, U_ij, U_ik, U_jk, U_ijk.
g = lambda *u: (u[0] + u[1] + u[2] > 1.5).astype(int)  # noqa: E731
# A joint 3-array with an f that is symmetric in its first-order latents:
X = sample_joint_darray(g, 3, (4, 4, 4), src.spawn(2))
print(f"joint 3-array: invariant under transposing axes 0 and 1: {np.array_equal(X, X.transpose(1, 0, 2))}")

# Partial symmetry: axes 0 and 2 share one permutation, axis 1 has its own.
P = sample_pi_darray(g, [[0, 2], [1]], (4, 3, 4), src.spawn(3))
print(f"pi-exchangeable with classes {{0, 2}}, {{1}}: symmetric in axes 0 and 2: "
      f"{np.array_equal(P, P.transpose(2, 1, 0))}")

# Simple arrays only use the first-order latents.
h = lambda a, b, c: a * b * c  # noqa: E731
Y = sample_simple_darray(h, [[0], [1], [2]], (3, 3, 3), src.spawn(4))
ranks = [np.linalg.matrix_rank(Y[:, :, k]) for k in range(3)]
print(f"simple 3-array with f = product: every slice has rank one: {ranks == [1, 1, 1]}\n")

# Randomization: draw each entry independently from a family indexed by a
# parameter array, here Gaussian noise around a smooth mean.
theta = np.add.outer(np.linspace(0, 1, 3), np.linspace(0, 2, 4))
R = randomize(theta, gaussian_kernel(0.05), src.spawn(5))
print("mean array:")
print(theta.round(2))
print("randomized:")
print(R.round(2))
