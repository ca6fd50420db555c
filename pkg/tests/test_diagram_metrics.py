import json
import math

import numpy as np
import pytest

from manifoldq import (
    ParameterError,
    PersistenceDiagram,
    bottleneck,
    bottleneck_to_trivial,
    persistence_entropy,
    summarize,
    wasserstein,
    wasserstein_to_trivial,
)
from conftest import random_diagram
from oracles import naive_bottleneck, naive_wasserstein

INF = float("inf")


def dgm(pairs, dim=1):
    return PersistenceDiagram.from_pairs(dim, np.array(pairs, dtype=float).reshape(-1, 2))


EMPTY = dgm([], dim=1)


class TestEntropy:
    def test_singleton_is_zero(self):
        assert persistence_entropy(dgm([(0, 1)])) == 0.0

    def test_two_equal_lifespans_is_ln2(self):
        assert abs(persistence_entropy(dgm([(0, 1), (2, 3)])) - math.log(2)) < 1e-12

    def test_quarter_three_quarter_split(self):
        expected = -(0.25 * math.log(0.25) + 0.75 * math.log(0.75))
        assert abs(persistence_entropy(dgm([(0, 1), (0, 3)])) - expected) < 1e-12

    def test_empty_is_zero(self):
        assert persistence_entropy(EMPTY) == 0.0

    def test_bounded_by_log_count(self, rng):
        for _ in range(20):
            d = random_diagram(rng)
            n = len(d)
            if n:
                assert persistence_entropy(d) <= math.log(n) + 1e-12

    def test_permutation_invariant(self, rng):
        pairs = [(0.0, 1.0), (0.5, 2.5), (1.0, 1.2)]
        a = persistence_entropy(dgm(pairs))
        b = persistence_entropy(dgm(pairs[::-1]))
        assert a == b

    def test_scale_invariant(self, rng):
        d = random_diagram(rng)
        if len(d) >= 2:
            scaled = dgm(3.7 * np.array(d.pairs))
            assert abs(persistence_entropy(d) - persistence_entropy(scaled)) < 1e-12

    def test_zero_persistence_pairs_ignored(self):
        base = dgm([(0.0, 1.0), (0.5, 2.0)])
        padded = dgm([(0.0, 1.0), (0.5, 2.0), (0.7, 0.7), (1.3, 1.3)])
        assert persistence_entropy(base) == persistence_entropy(padded)

    def test_policies(self):
        with_inf = dgm([(0, 1), (0, INF)])
        assert persistence_entropy(with_inf, "exclude") == 0.0  # one finite pair left
        capped = persistence_entropy(with_inf, "cap", eps_max=2.0)
        expected = -(1 / 3 * math.log(1 / 3) + 2 / 3 * math.log(2 / 3))
        assert abs(capped - expected) < 1e-12
        with pytest.raises(ParameterError):
            persistence_entropy(with_inf, "cap")
        with pytest.raises(ParameterError):
            persistence_entropy(with_inf, "nonsense")


class TestWasserstein:
    def test_identity_is_zero(self, rng):
        for _ in range(5):
            d = random_diagram(rng)
            assert wasserstein(d, d, p=1) == 0.0

    def test_single_point_to_empty(self):
        assert abs(wasserstein(dgm([(0, 2)]), EMPTY, p=1) - 1.0) < 1e-12

    def test_two_points_to_empty_sums_half_lifespans(self):
        assert abs(wasserstein(dgm([(0, 2), (1, 3)]), EMPTY, p=1) - 2.0) < 1e-12

    def test_symmetry(self, rng):
        for _ in range(10):
            d1, d2 = random_diagram(rng), random_diagram(rng)
            for p in (1.0, 2.0):
                assert wasserstein(d1, d2, p) == wasserstein(d2, d1, p)

    def test_triangle_inequality(self, rng):
        for _ in range(10):
            a, b, c = (random_diagram(rng, max_pairs=5) for _ in range(3))
            for p in (1.0, 2.0):
                assert wasserstein(a, c, p) <= wasserstein(a, b, p) + wasserstein(b, c, p) + 1e-9

    def test_matches_enumeration_oracle(self, rng):
        for _ in range(12):
            d1 = random_diagram(rng, max_pairs=3)
            d2 = random_diagram(rng, max_pairs=3)
            for p in (1.0, 2.0):
                got = wasserstein(d1, d2, p)
                want = naive_wasserstein(
                    [tuple(r) for r in d1.pairs], [tuple(r) for r in d2.pairs], p
                )
                assert abs(got - want) < 1e-9

    def test_dim_mismatch_rejected(self):
        with pytest.raises(ParameterError):
            wasserstein(dgm([(0, 1)], dim=1), dgm([(0, 1)], dim=2))

    def test_p_below_one_rejected(self):
        with pytest.raises(ParameterError):
            wasserstein(EMPTY, EMPTY, p=0.5)


class TestWassersteinToTrivial:
    def test_empty(self):
        assert wasserstein_to_trivial(EMPTY, p=1) == 0.0

    def test_single_pair_p2(self):
        assert abs(wasserstein_to_trivial(dgm([(0, 2)]), p=2) - 1.0) < 1e-12

    def test_equals_matching_solver(self, rng):
        for _ in range(25):
            d = random_diagram(rng)
            for p in (1.0, 2.0):
                closed = wasserstein_to_trivial(d, p)
                solver = wasserstein(d, EMPTY, p)
                assert abs(closed - solver) < 1e-9

    def test_p1_is_half_lifespan_sum(self, rng):
        for _ in range(10):
            d = random_diagram(rng)
            lifespans = d.pairs[:, 1] - d.pairs[:, 0]
            assert abs(wasserstein_to_trivial(d, p=1) - lifespans.sum() / 2) < 1e-12

    def test_scale_equivariance(self, rng):
        d = random_diagram(rng, max_pairs=6)
        if len(d):
            c = 2.5
            scaled = dgm(c * np.array(d.pairs))
            assert abs(wasserstein_to_trivial(scaled, 1) - c * wasserstein_to_trivial(d, 1)) < 1e-9


class TestBottleneck:
    def test_identity_is_zero(self, rng):
        d = random_diagram(rng)
        assert bottleneck(d, d) == 0.0

    def test_single_point_to_empty(self):
        assert bottleneck(dgm([(0, 2)]), EMPTY) == 1.0

    def test_max_of_half_lifespans(self):
        assert bottleneck(dgm([(0, 2), (0, 4)]), EMPTY) == 2.0

    def test_to_trivial_is_max_half_lifespan_exactly(self, rng):
        for _ in range(15):
            d = random_diagram(rng)
            expected = 0.0 if not len(d) else float(np.max((d.pairs[:, 1] - d.pairs[:, 0]) / 2))
            assert bottleneck(d, EMPTY) == expected
            assert bottleneck_to_trivial(d) == expected

    def test_matches_enumeration_oracle(self, rng):
        for _ in range(12):
            d1 = random_diagram(rng, max_pairs=3)
            d2 = random_diagram(rng, max_pairs=3)
            got = bottleneck(d1, d2)
            want = naive_bottleneck([tuple(r) for r in d1.pairs], [tuple(r) for r in d2.pairs])
            assert abs(got - want) < 1e-12

    def test_symmetry(self, rng):
        d1, d2 = random_diagram(rng), random_diagram(rng)
        assert bottleneck(d1, d2) == bottleneck(d2, d1)

    def test_triangle_inequality(self, rng):
        for _ in range(10):
            a, b, c = (random_diagram(rng, max_pairs=4) for _ in range(3))
            assert bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-9

    def test_shifted_diagram(self):
        # matching the point beats two diagonal projections
        d1 = dgm([(0.0, 2.0)])
        d2 = dgm([(0.1, 2.1)])
        assert abs(bottleneck(d1, d2) - 0.1) < 1e-12


class TestSummarize:
    def test_json_schema(self):
        s = summarize(dgm([(0, 1), (0, 3)]), p=1.0)
        doc = json.loads(json.dumps(s.to_dict()))
        assert set(doc) == {"dim", "entropy", "wasserstein", "bottleneck", "n_features", "infinite_policy"}
        assert doc["dim"] == 1
        assert doc["wasserstein"] == {"p": 1.0, "value": 2.0}
        assert doc["bottleneck"] == 1.5
        assert doc["n_features"] == 2
        assert doc["infinite_policy"] == "excluded"

    def test_capped_label(self):
        s = summarize(dgm([(0, INF)]), p=1.0, policy="cap", eps_max=2.0)
        assert s.infinite_policy == "capped(2)"
        assert s.n_features == 1
        assert s.wasserstein_value == 1.0

    def test_zero_iff_empty(self, rng):
        s = summarize(EMPTY)
        assert s.wasserstein_value == 0.0 and s.bottleneck == 0.0 and s.n_features == 0
        d = random_diagram(rng, max_pairs=4)
        if len(d):
            s2 = summarize(d)
            assert s2.wasserstein_value > 0 and s2.bottleneck > 0
