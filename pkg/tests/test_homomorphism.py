import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import LOWER_W, LOWER_W1, UPPER_W, UPPER_W1
from exchangeable.errors import ValidationError
from exchangeable.graphons import StepGraphon, constant, min_graphon
from exchangeable.limits import (C4, K2, K3, MOTIFS, P3, MotifGraph, degree_projection,
                                 empirical_graphon, hom_density_graph, hom_density_graphon,
                                 injective_density_graph, motif)
from exchangeable.structures import Graph

STAR3 = MotifGraph(4, ((0, 1), (0, 2), (0, 3)), "star3")


def brute_hom(F, W):
    """Exact rational sum over all block assignments."""
    W = [[Fraction(x) for x in row] for row in np.asarray(W).tolist()]
    k = len(W)
    total = Fraction(0)
    for a in itertools.product(range(k), repeat=F.n):
        term = Fraction(1)
        for u, v in F.edges:
            term *= W[a[u]][a[v]]
        total += term
    return total / k ** F.n


def brute_injective(F, A):
    n = len(A)
    maps = list(itertools.permutations(range(n), F.n))
    hits = sum(all(A[m[u]][m[v]] for u, v in F.edges) for m in maps)
    return hits / len(maps) if maps else 0.0


def random_graph(r, n, p=0.5):
    U = np.triu(r.random((n, n)) < p, 1)
    return Graph.from_adjacency(U | U.T)


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 1.0])
def test_constant_densities(p):
    for F in (K2, K3, P3, C4, STAR3):
        assert hom_density_graphon(F, constant(p)) == pytest.approx(p ** F.num_edges, abs=1e-15)
    assert hom_density_graphon(K3, constant(0.5)) == 0.125
    assert np.array_equal(degree_projection(constant(p)), [p])


def test_counterexample_fingerprints():
    for w in (UPPER_W, UPPER_W1):
        assert hom_density_graphon(K3, StepGraphon(w)) == 0.0
        assert np.all(degree_projection(StepGraphon(w)) == 0.5)
    assert hom_density_graphon(K3, StepGraphon(np.full((1, 1), 0.5))) == 0.125
    assert np.all(degree_projection(StepGraphon(np.full((1, 1), 0.5))) == 0.5)
    for w in (LOWER_W, LOWER_W1):
        assert np.allclose(degree_projection(StepGraphon(w)), 1 / 3, rtol=0, atol=1e-16)
        assert hom_density_graphon(K3, StepGraphon(w)) == pytest.approx(2 / 27, abs=1e-16)
    assert hom_density_graphon(K3, constant(1 / 3)) == pytest.approx(1 / 27, abs=1e-16)


def test_weakly_isomorphic_pairs_share_all_motifs():
    for a, b in [(UPPER_W, UPPER_W1), (LOWER_W, LOWER_W1)]:
        for F in list(MOTIFS.values()) + [STAR3]:
            assert hom_density_graphon(F, StepGraphon(a)) == pytest.approx(
                hom_density_graphon(F, StepGraphon(b)), abs=1e-15)


def _hom(F, W):
    from exchangeable.limits.homomorphism import _hom_sum
    return float(_hom_sum(F, np.asarray(W))) / len(W) ** F.n


def test_graphon_density_matches_rational_oracle():
    r = np.random.default_rng(1)
    for k in (1, 2, 3, 5):
        A = r.random((k, k))
        for W in ((A + A.T) / 2, A):
            for F in (K2, K3, P3, C4, STAR3):
                assert _hom(F, W) == pytest.approx(float(brute_hom(F, W)), rel=1e-13)


def test_edge_density_equals_mean_projection():
    r = np.random.default_rng(2)
    for _ in range(20):
        k = int(2 ** r.integers(0, 4))
        dyadic = r.integers(0, 17, size=(k, k)) / 16
        w = StepGraphon(dyadic)
        assert hom_density_graphon(K2, w) == degree_projection(w).mean()
        w = StepGraphon(r.random((k + 3, k + 3)))
        assert hom_density_graphon(K2, w) == pytest.approx(degree_projection(w).mean(), abs=1e-15)


def test_graph_and_empirical_graphon_agree_exactly():
    r = np.random.default_rng(3)
    for _ in range(50):
        g = random_graph(r, int(r.integers(1, 9)), r.random())
        for F in (K2, K3, P3, C4, STAR3):
            assert hom_density_graph(F, g) == hom_density_graphon(F, empirical_graphon(g))


@pytest.mark.parametrize("n", [1, 2, 5, 40])
def test_complete_and_empty_graphs(n):
    full = Graph.from_adjacency(~np.eye(n, dtype=bool))
    assert hom_density_graph(K2, full) == (n - 1) / n
    assert hom_density_graph(K2, Graph.from_adjacency(np.zeros((n, n), bool))) == 0.0
    if n >= 3:
        assert injective_density_graph(K3, full) == 1.0


def test_injective_density_oracle():
    r = np.random.default_rng(4)
    for _ in range(25):
        g = random_graph(r, int(r.integers(1, 8)), r.random())
        A = g.adjacency()
        for F in (K2, K3, P3, C4, STAR3):
            assert injective_density_graph(F, g) == pytest.approx(brute_injective(F, A), abs=1e-15)


def test_min_family_closed_forms():
    w = min_graphon()
    assert hom_density_graphon(K2, w) == 1 / 3
    assert hom_density_graphon(K3, w) == 1 / 15
    assert hom_density_graphon(P3, w) == 2 / 15
    fine = w.to_step(200)
    for F, exact in [(K2, 1 / 3), (K3, 1 / 15), (P3, 2 / 15)]:
        assert abs(hom_density_graphon(F, fine) - exact) < 1e-4
    # C4 has no closed form here; discretizations at two resolutions agree
    assert abs(hom_density_graphon(C4, w, resolution=128) - hom_density_graphon(C4, fine)) < 1e-4


def test_motif_validation():
    assert motif("K3") is K3
    with pytest.raises(ValidationError):
        MotifGraph(7, ())
    with pytest.raises(ValidationError):
        MotifGraph(3, ((0, 0),))
    with pytest.raises(ValidationError):
        MotifGraph(3, ((0, 1), (1, 0)))
    with pytest.raises(Exception):
        motif("K9")
