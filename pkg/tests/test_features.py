from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import within_sigma
from exchangeable.errors import ParameterError, SizeError, ValidationError
from exchangeable.features import (FeaturePaintbox, allocation_from_paintbox, ibp_sample,
                                   ibp_stick_breaking)
from exchangeable.rng import RandomSource


def test_ibp_single_row_poisson_mean():
    counts = [ibp_sample(1, 3.0, RandomSource(1).spawn(t)).num_features for t in range(20_000)]
    assert within_sigma(counts, 3.0)


def test_ibp_tiny_rate_has_no_features():
    assert ibp_sample(10, 1e-9, 0).num_features == 0


def test_ibp_total_features_harmonic():
    n, gamma = 30, 2.0
    K = [ibp_sample(n, gamma, RandomSource(2).spawn(t)).num_features for t in range(4000)]
    assert within_sigma(K, gamma * sum(1.0 / k for k in range(1, n + 1)))


def test_ibp_inheritance_probability():
    # row 2 takes each row-1 feature with probability 1/2
    took, total = 0, 0
    for t in range(6000):
        Z = ibp_sample(2, 2.0, RandomSource(3).spawn(t)).Z
        k1 = Z[0].sum()
        took += Z[1, :k1].sum()
        total += k1
    assert abs(took / total - 0.5) < 3 * np.sqrt(0.25 / total)


def test_ibp_two_row_symmetry():
    only1, only2, both = [], [], []
    for t in range(20_000):
        Z = ibp_sample(2, 1.5, RandomSource(4).spawn(t)).Z
        only1.append(int((Z[0] & ~Z[1]).sum()))
        only2.append(int((~Z[0] & Z[1]).sum()))
        both.append(int((Z[0] & Z[1]).sum()))
    diff = np.array(only1) - np.array(only2)
    assert within_sigma(diff, 0.0, 4)
    # exact means: both ~ gamma/2, each exclusive count ~ gamma/2
    assert within_sigma(both, 0.75, 4) and within_sigma(only1, 0.75, 4)


def test_ibp_validation():
    with pytest.raises(ParameterError):
        ibp_sample(3, 0.0, 0)
    with pytest.raises(ParameterError):
        ibp_sample(0, 1.0, 0)


def test_stick_breaking_non_increasing_and_truncated():
    for alpha in (0.5, 1.0, 2.0):
        pb = ibp_stick_breaking(alpha, 1e-4, RandomSource(5))
        assert all(a >= b for a, b in zip(pb.V, pb.V[1:]))
        assert min(pb.V, default=1.0) >= 1e-4


def test_stick_breaking_means_alpha_one():
    V = np.zeros((20_000, 5))
    for t in range(len(V)):
        v = ibp_stick_breaking(1.0, 1e-12, RandomSource(6).spawn(t)).V[:5]
        V[t, :len(v)] = v
    for k in range(5):
        assert within_sigma(V[:, k], 2.0 ** -(k + 1))


def test_interval_measure_is_exact():
    pb = FeaturePaintbox((0.7, 0.4, 0.4, 0.1))
    for k, v in enumerate(pb.V):
        ivs = pb.intervals(k)
        assert sum(b - a for a, b in ivs) == Fraction(v)
        assert len(ivs) == 2 ** k
    with pytest.raises(SizeError):
        FeaturePaintbox(tuple([0.9] * 25)).intervals(22)


@settings(max_examples=200)
@given(st.lists(st.floats(0.01, 0.99), min_size=1, max_size=6), st.floats(0, 1, exclude_max=True))
def test_membership_matches_intervals(vals, u):
    pb = FeaturePaintbox(tuple(sorted(vals, reverse=True)))
    row = pb.membership([u])[0]
    fu = Fraction(u)
    for k in range(pb.num_features):
        ivs = pb.intervals(k)
        if min(min(abs(fu - a), abs(fu - b)) for a, b in ivs) < Fraction(1, 10**9):
            continue  # floating rounding may flip points on an endpoint
        assert row[k] == any(a <= fu < b for a, b in ivs)


def test_paintbox_validation():
    with pytest.raises(ValidationError):
        FeaturePaintbox((0.2, 0.5))
    with pytest.raises(ValidationError):
        FeaturePaintbox((1.5,))


def test_allocation_trivial_cases():
    assert allocation_from_paintbox(FeaturePaintbox((1.0,)), 7, 0).Z.all()
    assert allocation_from_paintbox(FeaturePaintbox(()), 7, 0).Z.shape == (7, 0)


def test_allocation_counts_match_total_mass():
    pb = ibp_stick_breaking(2.0, 1e-6, RandomSource(7))
    fa = allocation_from_paintbox(pb, 20_000, RandomSource(8))
    assert fa.counts().max() <= pb.num_features
    assert within_sigma(fa.counts(), pb.total_mass)
    # each feature's frequency matches its inclusion probability
    freq = fa.Z.mean(axis=0)
    se = np.sqrt(np.array(pb.V) * (1 - np.array(pb.V)) / fa.n) + 1e-12
    assert np.all(np.abs(freq - pb.V) <= 4 * se)


def test_feature_pattern_counts_ignore_enumeration():
    fa = ibp_sample(6, 3.0, 9)
    perm = np.random.default_rng(0).permutation(fa.num_features)
    from exchangeable.structures import FeatureAllocation

    assert FeatureAllocation(fa.Z[:, perm]).pattern_counts() == fa.pattern_counts()
