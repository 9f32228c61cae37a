import math

import numpy as np
import pytest
from scipy import special

from conftest import within_sigma
from exchangeable.arrays import sample_graph
from exchangeable.errors import ParameterError
from exchangeable.graphons import constant, min_graphon
from exchangeable.models import (Cut, EigenParams, Floorplan, IrmParams, LfrmParams, beta_psi,
                                 bilinear, bjr_sample, eigenmodel_sample, irm_sample,
                                 link_probabilities, lfrm_sample, mondrian_relational_sample,
                                 mondrian_sample, replay)
from exchangeable.rng import RandomSource

UNIT = (0.0, 1.0, 0.0, 1.0)


# IRM

def test_irm_shapes_and_ranges():
    s = irm_sample(7, 5, IrmParams(1.0, 2.0, 2.0, 3.0), 1)
    assert s.X.shape == (7, 5) and set(np.unique(s.X)) <= {0, 1}
    assert s.theta.shape == (s.rows.num_blocks, s.cols.num_blocks)
    assert np.all((s.theta > 0) & (s.theta < 1))
    one = irm_sample(1, 1, IrmParams(), 2)
    assert one.X.shape == (1, 1) and one.theta.shape == (1, 1)


def test_irm_single_block_mean_half():
    p = IrmParams(1e-9, 1e-9, 1.0, 1.0)
    x = [irm_sample(2, 2, p, RandomSource(3).spawn(t)).X[0, 1] for t in range(20_000)]
    assert within_sigma(x, 0.5)


def test_irm_conditional_law():
    s = irm_sample(60, 60, IrmParams(1e-9, 1e-9, 1.0, 1.0), 4)
    assert s.rows.num_blocks == 1 and s.cols.num_blocks == 1
    th = s.theta[0, 0]
    assert abs(s.X.mean() - th) < 4 * math.sqrt(th * (1 - th) / 3600)


def test_irm_projective_and_joint():
    p = IrmParams(1.5, 0.5, 1.0, 1.0)
    big = irm_sample(9, 8, p, 5).X
    assert np.array_equal(big[:6, :4], irm_sample(6, 4, p, 5).X)
    j = irm_sample(6, 6, p, 6, joint=True)
    assert j.rows is j.cols
    with pytest.raises(ParameterError):
        irm_sample(3, 4, p, 0, joint=True)
    with pytest.raises(ParameterError):
        IrmParams(c=0.0)


# LFRM

def test_lfrm_no_features_is_fair_coin():
    p = LfrmParams(1e-9, 1e-9, 1.0, "logistic")
    s = lfrm_sample(50, 50, p, 1)
    assert s.rows.num_features == 0 and np.all(s.theta == 0.5)
    assert within_sigma(s.X.ravel(), 0.5)


def test_lfrm_vanishing_weights():
    s = lfrm_sample(30, 30, LfrmParams(3.0, 3.0, 1e-12), 2)
    assert np.allclose(s.theta, 0.5)


def test_link_probabilities_oracle():
    r = np.random.default_rng(0)
    Zr, Zc = r.random((4, 3)) < 0.5, r.random((5, 2)) < 0.5
    W = r.normal(size=(3, 2))
    expect = np.empty((4, 5))
    for i in range(4):
        for j in range(5):
            s = sum(W[k, l] for k in range(3) for l in range(2) if Zr[i, k] and Zc[j, l])
            expect[i, j] = 1 / (1 + math.exp(-s))
    assert np.allclose(link_probabilities(Zr, Zc, W), expect, atol=1e-15)
    probit = link_probabilities(Zr, Zc, W, "probit")
    assert np.allclose(probit, special.ndtr(special.logit(expect)), atol=1e-12)


def test_lfrm_feature_relabeling_invariance():
    for t in range(50):
        s = lfrm_sample(2, 2, LfrmParams(1.0, 1.0), RandomSource(3).spawn(t))
        K = s.rows.num_features
        perm = np.random.default_rng(t).permutation(K)
        relabeled = link_probabilities(s.rows.Z[:, perm], s.cols.Z, s.weights[perm])
        assert np.allclose(relabeled, s.theta, atol=1e-15)


# Mondrian

def test_mondrian_first_cut_time_and_orientation():
    src = RandomSource(4)
    cuts = [mondrian_sample(math.inf, UNIT, src.spawn(t), max_cuts=1).history[0] for t in range(20_000)]
    assert within_sigma([c.time for c in cuts], 0.5)
    assert within_sigma([c.axis == 0 for c in cuts], 0.5)


def test_mondrian_tiny_budget_is_trivial():
    fp = mondrian_sample(1e-9, UNIT, 1)
    assert len(fp) == 1 and fp.rectangles == [UNIT]


def test_mondrian_tiling_and_replay():
    for t in range(20):
        fp = mondrian_sample(4.0, (0.0, 2.0, -1.0, 1.0), RandomSource(5).spawn(t))
        assert abs(fp.areas().sum() - 4.0) < 1e-12
        assert replay(fp.domain, fp.history).rectangles == fp.rectangles
        pts = np.random.default_rng(t).random((2000, 2)) * [2, 2] + [0, -1]
        r = np.array(fp.rectangles)
        inside = ((pts[:, :1] >= r[:, 0]) & (pts[:, :1] < r[:, 1])
                  & (pts[:, 1:] >= r[:, 2]) & (pts[:, 1:] < r[:, 3]))
        assert np.all(inside.sum(axis=1) == 1)
        assert np.array_equal(fp.locate(pts[:, 0], pts[:, 1]), inside.argmax(axis=1))
        times = [c.time for c in fp.history]
        assert times == sorted(times) and (not times or times[-1] <= 4.0)


def test_floorplan_rejects_bad_cut():
    fp = Floorplan(UNIT)
    with pytest.raises(ParameterError):
        fp.apply(Cut(0.1, 0, 0, 1.5))


def test_mondrian_relational_basics():
    s = mondrian_relational_sample(1e-9, beta_psi(), 8, 1)
    assert np.all(s.X == s.psi[0])
    s = mondrian_relational_sample(3.0, beta_psi(2, 2), 12, 2)
    assert np.array_equal(s.X, s.psi[s.rect_ids])
    pts = -np.log(s.U)
    assert np.array_equal(s.rect_ids, s.floorplan.locate(pts[:, None], pts[None, :]))
    b = mondrian_relational_sample(3.0, beta_psi(), 12, 2, bernoulli=True)
    assert set(np.unique(b.X)) <= {0, 1}


def test_mondrian_row_slices_refine_with_time():
    s = mondrian_relational_sample(2.0, beta_psi(), 15, 3)
    pts = -np.log(s.U)
    times = [c.time for c in s.floorplan.history]
    for t1, t2 in zip(times[:-1], times[1:]):
        coarse = replay(s.floorplan.domain, s.floorplan.history, t1).locate(pts[:, None], pts[None, :])
        fine = replay(s.floorplan.domain, s.floorplan.history, t2).locate(pts[:, None], pts[None, :])
        for i in range(15):
            mapping = {}
            for a, b in zip(fine[i], coarse[i]):
                assert mapping.setdefault(a, b) == b


# eigenmodel

def test_eigen_zero_lambda_is_fair_coin():
    s = eigenmodel_sample(120, EigenParams(3, 0.0, 1.0, "probit"), 1, Lambda=np.zeros((3, 3)))
    off = s.X[~np.eye(120, dtype=bool)]
    assert within_sigma(off, 0.5)
    assert np.all(np.diag(s.X) == 0)


def test_eigen_sign_flip_invariance():
    s = eigenmodel_sample(6, EigenParams(1), 2)
    assert np.array_equal(bilinear(-s.embeddings, s.Lambda), bilinear(s.embeddings, s.Lambda))
    assert np.allclose(s.G, s.embeddings @ s.Lambda @ s.embeddings.T)


def test_eigen_params_validation():
    with pytest.raises(ParameterError):
        EigenParams(0)
    with pytest.raises(ParameterError):
        EigenParams(2, 0.0, 0.0)
    with pytest.raises(ParameterError):
        EigenParams(2, link="tanh")


def test_eigen_edge_probability_oracle_small():
    T = 20_000
    ours = [eigenmodel_sample(2, EigenParams(2), RandomSource(6).spawn(t)).X[0, 1] for t in range(T)]
    r = np.random.default_rng(1)
    x = r.laplace(size=(T, 2, 2))
    L = r.normal(size=(T, 2, 2))
    G = np.einsum("ta,tab,tb->t", x[:, 0], L, x[:, 1])
    p = special.ndtr(G + r.normal(size=T)).mean()
    se = np.sqrt(np.var(ours) / T + p * (1 - p) / T)
    assert abs(np.mean(ours) - p) < 3 * se


# BJR

def test_bjr_edge_counts():
    e = [bjr_sample(constant(1.0), 1000, RandomSource(7).spawn(t)).num_edges for t in range(60)]
    assert within_sigma(e, 999 / 2)
    assert bjr_sample(constant(0.0), 100, 0).num_edges == 0


def test_bjr_is_percolation_of_dense_sample():
    g = bjr_sample(min_graphon(), 300, 8)
    dense = sample_graph(min_graphon(), 300, 8)[0].adjacency()
    assert np.all(dense[g.adjacency()])


def test_bjr_linear_growth_small():
    def mean_ratio(n):
        e = [bjr_sample(min_graphon(), n, RandomSource(n).spawn(t)).num_edges for t in range(10)]
        return np.mean(e) / n

    a, b = mean_ratio(1000), mean_ratio(3000)
    assert abs(a / b - 1) < 0.1
