import math

import pytest

from manifoldq import (
    DistanceMatrix,
    ParameterError,
    PointCloud,
    UnsupportedDimensionError,
    build_rips,
    pairwise_distances,
    write_debug_dump,
)
from conftest import random_cloud
from oracles import naive_rips_simplices


def as_set(filtration):
    return {(s.vertices, round(s.value, 12)) for s in filtration.simplices}


class TestBuildRips:
    def test_equilateral_triangle_full_complex(self):
        # side-1 triangle: all three edges and the filled triangle enter at 1
        dm = DistanceMatrix([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
        f = build_rips(dm, max_dim=2, eps_max="auto")
        simplices = [(s.vertices, s.dim, s.value) for s in f.simplices]
        assert simplices == [
            ((0,), 0, 0.0),
            ((1,), 0, 0.0),
            ((2,), 0, 0.0),
            ((0, 1), 1, 1.0),
            ((0, 2), 1, 1.0),
            ((1, 2), 1, 1.0),
            ((0, 1, 2), 2, 1.0),
        ]

    def test_two_far_points_below_threshold(self):
        dm = DistanceMatrix([[0.0, 5.0], [5.0, 0.0]])
        f = build_rips(dm, max_dim=2, eps_max=1.0)
        assert len(f) == 2
        assert [s.dim for s in f.simplices] == [0, 0]

    def test_matches_exhaustive_enumeration(self, rng):
        pc = random_cloud(rng, 8, 3)
        dm = pairwise_distances(pc)
        eps = 0.8 * dm.max_distance()
        f = build_rips(dm, max_dim=3, eps_max=eps)
        expected = {
            (verts, round(val, 12)) for verts, val in naive_rips_simplices(dm.values, 3, eps)
        }
        assert as_set(f) == expected

    def test_full_filtration_counts(self, rng):
        # with eps = auto every subset of size <= max_dim+1 appears
        n = 9
        pc = random_cloud(rng, n, 2)
        f = build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto")
        for d in range(4):
            assert f.count(d) == math.comb(n, d + 1)

    def test_monotonic_in_eps(self, rng):
        pc = random_cloud(rng, 10, 2)
        dm = pairwise_distances(pc)
        small = build_rips(dm, max_dim=2, eps_max=0.5 * dm.max_distance())
        large = build_rips(dm, max_dim=2, eps_max=dm.max_distance())
        assert as_set(small) <= as_set(large)

    def test_value_is_max_facet_value(self, rng):
        # clique property: for dim >= 2 the diameter equals the largest facet diameter
        pc = random_cloud(rng, 9, 3)
        f = build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto")
        value_of = {s.vertices: s.value for s in f.simplices}
        checked = 0
        for s in f.simplices:
            if s.dim < 2:
                continue
            facets = [s.vertices[:i] + s.vertices[i + 1 :] for i in range(len(s.vertices))]
            assert s.value == max(value_of[fct] for fct in facets)
            checked += 1
        assert checked > 0

    def test_canonical_order(self, rng):
        pc = random_cloud(rng, 8, 2)
        f = build_rips(pairwise_distances(pc), max_dim=2, eps_max="auto")
        keys = [(s.value, s.dim, s.vertices) for s in f.simplices]
        assert keys == sorted(keys)

    def test_faces_never_after_cofaces(self, rng):
        pc = random_cloud(rng, 8, 2)
        f = build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto")
        position = {s.vertices: i for i, s in enumerate(f.simplices)}
        for s in f.simplices:
            if s.dim == 0:
                continue
            for i in range(len(s.vertices)):
                face = s.vertices[:i] + s.vertices[i + 1 :]
                assert position[face] < position[s.vertices]

    def test_parameter_errors(self, rng):
        dm = pairwise_distances(random_cloud(rng, 4, 2))
        with pytest.raises(UnsupportedDimensionError):
            build_rips(dm, max_dim=4)
        with pytest.raises(ParameterError):
            build_rips(dm, max_dim=0)
        with pytest.raises(ParameterError):
            build_rips(dm, max_dim=2, eps_max=0.0)
        with pytest.raises(ParameterError):
            build_rips(dm, max_dim=2, eps_max=-1.0)


class TestDebugDump:
    def test_format(self, tmp_path):
        pts = [[0.0], [1.0]]
        f = build_rips(pairwise_distances(PointCloud(pts)), max_dim=1, eps_max="auto")
        out = tmp_path / "dump.txt"
        write_debug_dump(f, out)
        lines = out.read_text().strip().splitlines()
        assert lines == ["0 0 0", "0 0 1", "1 1 0 1"]
