import math

import numpy as np
import pytest

from manifoldq import (
    DistanceMatrix,
    IntegrityError,
    PointCloud,
    boundary,
    build_rips,
    compute_h0_unionfind,
    compute_persistence,
    pairwise_distances,
    read_diagrams_csv,
    write_diagrams_csv,
)
from manifoldq.rips import FilteredSimplex, Filtration
from conftest import random_cloud, random_diagram
from oracles import naive_h0, naive_persistence

INF = float("inf")


def diagram_multiset(dgm, ndigits=12):
    return sorted((round(b, ndigits), round(d, ndigits) if math.isfinite(d) else INF)
                  for b, d in dgm.pairs)


class TestBoundary:
    def test_triangle_boundary(self):
        s = FilteredSimplex((0, 1, 2), 2, 1.0)
        assert boundary(s) == [(1, 2), (0, 2), (0, 1)]

    def test_edge_boundary(self):
        assert boundary(FilteredSimplex((0, 1), 1, 1.0)) == [(1,), (0,)]

    def test_vertex_boundary_empty(self):
        assert boundary(FilteredSimplex((3,), 0, 0.0)) == []

    def test_boundary_of_boundary_vanishes_mod2(self, rng):
        # faces of faces appear an even number of times, so they cancel over Z/2
        pc = random_cloud(rng, 7, 3)
        f = build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto")
        for s in f.simplices:
            if s.dim < 2:
                continue
            counts = {}
            for face in boundary(s):
                for sub in boundary(FilteredSimplex(face, s.dim - 1, s.value)):
                    counts[sub] = counts.get(sub, 0) + 1
            assert all(c % 2 == 0 for c in counts.values())


class TestComputePersistence:
    def test_single_point(self):
        dm = DistanceMatrix([[0.0]])
        f = build_rips(dm, max_dim=1, eps_max=1.0)
        dgms = compute_persistence(f)
        assert diagram_multiset(dgms[0]) == [(0.0, INF)]

    def test_equilateral_triangle(self):
        # 1-cycle at value 1 is filled by the triangle at value 1: zero persistence
        dm = DistanceMatrix([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
        dgms = compute_persistence(build_rips(dm, max_dim=2, eps_max="auto"))
        assert diagram_multiset(dgms[0]) == [(0.0, 1.0), (0.0, 1.0), (0.0, INF)]
        assert diagram_multiset(dgms[1]) == []

    def test_unit_square(self):
        pc = PointCloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        dgms = compute_persistence(build_rips(pairwise_distances(pc), max_dim=2, eps_max="auto"))
        assert diagram_multiset(dgms[0]) == [(0.0, 1.0)] * 3 + [(0.0, INF)]
        assert len(dgms[1]) == 1
        birth, death = dgms[1].pairs[0]
        assert birth == 1.0
        assert abs(death - math.sqrt(2)) < 1e-12

    def test_two_clusters(self):
        pc = PointCloud([[0.0], [0.5], [10.0], [10.5]])
        dgms = compute_persistence(build_rips(pairwise_distances(pc), max_dim=1, eps_max=1.0))
        assert diagram_multiset(dgms[0]) == [(0.0, 0.5), (0.0, 0.5), (0.0, INF), (0.0, INF)]

    def test_matches_naive_oracle(self, rng):
        for _ in range(25):
            n = int(rng.integers(4, 13))
            dim = int(rng.integers(2, 4))
            pc = random_cloud(rng, n, dim)
            dm = pairwise_distances(pc)
            eps = float(rng.uniform(0.5, 1.0)) * dm.max_distance()
            dgms = compute_persistence(build_rips(dm, max_dim=3, eps_max=eps))
            expected = naive_persistence(dm.values, 3, eps)
            for q in range(3):
                got = diagram_multiset(dgms[q])
                want = sorted((round(b, 12), round(d, 12) if math.isfinite(d) else INF)
                              for b, d in expected[q])
                assert got == want, f"dim {q} mismatch"

    def test_full_scale_betti_numbers(self, rng):
        # at the enclosing diameter the complex is a simplex: contractible
        pc = random_cloud(rng, 10, 3)
        dgms = compute_persistence(build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto"))
        n_infinite = [int(np.sum(np.isinf(d.pairs[:, 1]))) for d in dgms]
        assert n_infinite == [1, 0, 0]

    def test_deterministic_across_runs(self, rng):
        pc = random_cloud(rng, 15, 2)
        f1 = build_rips(pairwise_distances(pc), max_dim=2, eps_max="auto")
        f2 = build_rips(pairwise_distances(pc), max_dim=2, eps_max="auto")
        a = compute_persistence(f1)
        b = compute_persistence(f2)
        assert all(x == y for x, y in zip(a, b))

    def test_face_closure_violation_detected(self):
        # an edge whose vertices are missing from the filtration
        broken = Filtration(
            verts_by_dim={0: np.array([[0]]), 1: np.array([[0, 1]])},
            values_by_dim={0: np.zeros(1), 1: np.array([1.0])},
            n_vertices=2,
            eps_max=1.0,
            max_dim=1,
        )
        with pytest.raises(IntegrityError, match="face"):
            compute_persistence(broken)

    def test_value_below_face_detected(self):
        broken = Filtration(
            verts_by_dim={
                0: np.array([[0], [1], [2]]),
                1: np.array([[0, 1], [0, 2], [1, 2]]),
                2: np.array([[0, 1, 2]]),
            },
            values_by_dim={
                0: np.zeros(3),
                1: np.array([1.0, 1.0, 2.0]),
                2: np.array([1.5]),  # below its (1,2) face at 2.0
            },
            n_vertices=3,
            eps_max=2.0,
            max_dim=2,
        )
        with pytest.raises(IntegrityError, match="below"):
            compute_persistence(broken)


class TestUnionFindH0:
    def test_two_points(self):
        dm = DistanceMatrix([[0.0, 1.0], [1.0, 0.0]])
        dgm = compute_h0_unionfind(dm)
        assert diagram_multiset(dgm) == [(0.0, 1.0), (0.0, INF)]

    def test_hand_mst_line(self):
        dm = pairwise_distances(PointCloud([[0.0], [1.0], [3.0]]))
        dgm = compute_h0_unionfind(dm)
        assert diagram_multiset(dgm) == [(0.0, 1.0), (0.0, 2.0), (0.0, INF)]

    def test_matches_reduction(self, rng):
        for _ in range(10):
            n = int(rng.integers(5, 51))
            pc = random_cloud(rng, n, int(rng.integers(2, 4)))
            dm = pairwise_distances(pc)
            eps = float(rng.uniform(0.3, 1.0)) * dm.max_distance()
            uf = compute_h0_unionfind(dm, eps)
            red = compute_persistence(build_rips(dm, max_dim=1, eps_max=eps))[0]
            assert diagram_multiset(uf) == diagram_multiset(red)

    def test_matches_naive_kruskal(self, rng):
        for _ in range(5):
            pc = random_cloud(rng, 20, 2)
            dm = pairwise_distances(pc)
            eps = 0.6 * dm.max_distance()
            got = diagram_multiset(compute_h0_unionfind(dm, eps))
            want = sorted((round(b, 12), round(d, 12) if math.isfinite(d) else INF)
                          for b, d in naive_h0(dm.values.tolist(), eps))
            assert got == want

    def test_duplicate_points_drop_zero_pairs(self):
        dm = pairwise_distances(PointCloud([[0.0], [0.0], [2.0]]))
        dgm = compute_h0_unionfind(dm)
        assert diagram_multiset(dgm) == [(0.0, 2.0), (0.0, INF)]


class TestDiagramCsv:
    def test_round_trip(self, tmp_path, rng):
        dgms = [random_diagram(rng, dim=q, with_infinite=(q == 0)) for q in range(3)]
        # ensure at least one infinite entry exercises the "inf" token
        dgms[0] = type(dgms[0]).from_pairs(0, [[0.0, 1.0], [0.0, INF]])
        path = tmp_path / "dgms.csv"
        write_diagrams_csv(dgms, path)
        back = read_diagrams_csv(path)
        nonempty = [d for d in dgms if len(d)]
        assert len(back) == len(nonempty)
        for orig, parsed in zip(nonempty, back):
            assert parsed == orig

    def test_inf_token(self, tmp_path):
        from manifoldq import PersistenceDiagram

        path = tmp_path / "d.csv"
        write_diagrams_csv([PersistenceDiagram.from_pairs(1, [[0.5, INF]])], path)
        lines = path.read_text().strip().splitlines()
        assert lines == ["dim,birth,death", "1,0.5,inf"]
