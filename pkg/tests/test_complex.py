"""Tests for complexes, Čech nerve construction and simpliciality checks."""

import itertools

import numpy as np
import pytest

from src.nerve_recon.complex import (
    SimplicialComplex,
    SimplicialMap,
    as_simplex,
    build_cech_nerve,
    verify_complex,
    verify_simplicial,
)
from src.nerve_recon.errors import DomainError, NonSimplicialMapError, SimplexLimitExceeded
from src.nerve_recon.geometry import cech_face_test


def brute_force_nerve(points: np.ndarray, epsilon: float, d_max: int) -> set[tuple[int, ...]]:
    found = set()
    for size in range(1, d_max + 2):
        for subset in itertools.combinations(range(len(points)), size):
            if cech_face_test(points[list(subset)], epsilon):
                found.add(subset)
    return found


# ── models ──────────────────────────────────────────────────────────


class TestSimplicialComplex:
    def test_close_adds_faces(self, octahedron):
        assert octahedron.f_vector() == (6, 12, 8, 0)
        assert octahedron.dimension == 2

    def test_levels_sorted(self):
        complex_ = SimplicialComplex.from_simplices([(2,), (0,), (1,)])
        assert complex_.simplices[0] == [(0,), (1,), (2,)]

    def test_index_and_membership(self, hollow_triangle):
        assert hollow_triangle.index_of((0, 2)) == 1
        assert (1, 2) in hollow_triangle
        assert (0, 1, 2) not in hollow_triangle
        assert hollow_triangle.index_of((0, 1, 2, 3, 4)) is None

    def test_count_outside_range(self, hollow_triangle):
        assert hollow_triangle.count(5) == 0
        assert hollow_triangle.count(-1) == 0

    def test_negative_d_max(self):
        with pytest.raises(DomainError):
            SimplicialComplex(simplices=[], d_max=-1)

    def test_as_simplex_sorts_and_dedups(self):
        assert as_simplex([3, 1, 3, 2]) == (1, 2, 3)


class TestSimplicialMap:
    def test_image_collapses(self):
        phi = SimplicialMap.from_sequence([0, 0, 1])
        assert phi.image((0, 1, 2)) == (0, 1)

    def test_composition(self):
        first = SimplicialMap.from_sequence([1, 2, 0])
        second = SimplicialMap.from_sequence([5, 6, 7])
        assert first.then(second).assignment == (6, 7, 5)

    def test_composition_out_of_range(self):
        with pytest.raises(NonSimplicialMapError):
            SimplicialMap.from_sequence([3]).then(SimplicialMap.identity(2))

    def test_constant(self):
        assert SimplicialMap.constant(3, 4).assignment == (4, 4, 4)


# ── nerve ───────────────────────────────────────────────────────────


class TestBuildCechNerve:
    def test_matches_subset_enumeration(self):
        rng = np.random.default_rng(0)
        for trial in range(40):
            points = rng.uniform(0.0, 1.0, size=(int(rng.integers(2, 13)), 2))
            epsilon = float(rng.uniform(0.1, 0.5))
            nerve = build_cech_nerve(points, epsilon, 3)
            assert set(nerve.iter_simplices()) == brute_force_nerve(points, epsilon, 3), trial

    def test_matches_subset_enumeration_in_space(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            points = rng.uniform(0.0, 1.0, size=(10, 3))
            nerve = build_cech_nerve(points, 0.45, 3)
            assert set(nerve.iter_simplices()) == brute_force_nerve(points, 0.45, 3)

    def test_pairwise_close_triangle_is_not_a_face(self):
        # every pair is within 2 * 0.55 but the enclosing radius is 1/sqrt(3)
        points = [[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]]
        nerve = build_cech_nerve(points, 0.55, 2)
        assert nerve.f_vector() == (3, 3, 0)

    def test_strict_edge_threshold(self):
        assert build_cech_nerve([[0.0], [2.0]], 1.0, 1).f_vector() == (2, 0)

    def test_geometry_attached(self, rng):
        points = rng.normal(size=(5, 2))
        nerve = build_cech_nerve(points, 0.3, 2)
        assert nerve.epsilon == 0.3
        np.testing.assert_array_equal(nerve.points, points)
        assert verify_complex(nerve)

    def test_truncation_padding(self):
        nerve = build_cech_nerve([[0.0, 0.0], [5.0, 5.0]], 0.1, 3)
        assert nerve.f_vector() == (2, 0, 0, 0)

    @pytest.mark.parametrize("epsilon, d_max", [(0.0, 2), (-1.0, 2), (0.5, 0)])
    def test_invalid_arguments(self, epsilon, d_max):
        with pytest.raises(DomainError):
            build_cech_nerve([[0.0, 0.0]], epsilon, d_max)

    def test_simplex_limit(self):
        points = np.zeros((10, 2))
        with pytest.raises(SimplexLimitExceeded) as excinfo:
            build_cech_nerve(points, 0.1, 2, simplex_limit=30)
        assert excinfo.value.dim == 1

    def test_zero_simplex_limit_is_a_limit(self):
        with pytest.raises(SimplexLimitExceeded) as excinfo:
            build_cech_nerve([[0.0, 0.0]], 0.1, 1, simplex_limit=0)
        assert excinfo.value.dim == 0


class TestNerveProperties:
    def test_monotone_in_epsilon(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            points = rng.uniform(0.0, 1.0, size=(14, 2))
            small, large = sorted(float(e) for e in rng.uniform(0.05, 0.4, size=2))
            inner = set(build_cech_nerve(points, small, 3).iter_simplices())
            outer = set(build_cech_nerve(points, large, 3).iter_simplices())
            assert inner <= outer

    def test_relabelling_points(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            points = rng.uniform(0.0, 1.0, size=(12, 3))
            order = rng.permutation(len(points))
            original = set(build_cech_nerve(points, 0.35, 3).iter_simplices())
            shuffled = build_cech_nerve(points[order], 0.35, 3)
            mapped = {as_simplex(int(order[v]) for v in s) for s in shuffled.iter_simplices()}
            assert mapped == original

    def test_one_skeleton_is_the_proximity_graph(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            points = rng.uniform(0.0, 1.0, size=(25, 2))
            epsilon = float(rng.uniform(0.05, 0.3))
            nerve = build_cech_nerve(points, epsilon, 2)
            expected = [
                (i, j)
                for i, j in itertools.combinations(range(len(points)), 2)
                if np.linalg.norm(points[i] - points[j]) < 2.0 * epsilon
            ]
            assert nerve.simplices[1] == expected

    def test_face_test_is_closed_under_subsets(self):
        rng = np.random.default_rng(24)
        checked = 0
        while checked < 200:
            points = rng.normal(scale=0.3, size=(int(rng.integers(2, 7)), 3))
            epsilon = float(rng.uniform(0.2, 0.8))
            if not cech_face_test(points, epsilon):
                continue
            checked += 1
            for size in range(1, len(points)):
                for subset in itertools.combinations(range(len(points)), size):
                    assert cech_face_test(points[list(subset)], epsilon)


class TestVerifyComplex:
    def test_missing_face(self):
        complex_ = SimplicialComplex.from_simplices([(0,), (1,), (0, 1), (1, 2)])
        assert not verify_complex(complex_)

    def test_closed_complex(self, octahedron):
        assert verify_complex(octahedron)

    def test_nerve_with_forged_simplex(self):
        nerve = build_cech_nerve([[0.0], [1.0], [5.0]], 0.6, 1)
        forged = SimplicialComplex(
            simplices=[nerve.simplices[0], [(0, 1), (1, 2)]],
            d_max=1,
            points=nerve.points,
            epsilon=nerve.epsilon,
        )
        assert not verify_complex(forged)


class TestVerifySimplicial:
    def test_identity(self, hollow_triangle):
        phi = SimplicialMap.identity(3)
        assert verify_simplicial(phi, hollow_triangle, hollow_triangle)

    def test_collapse_to_vertex(self, hollow_triangle):
        phi = SimplicialMap.constant(3, 0)
        assert verify_simplicial(phi, hollow_triangle, hollow_triangle)

    def test_image_not_a_simplex(self):
        path = SimplicialComplex.from_simplices([(0, 1), (1, 2)], close=True)
        phi = SimplicialMap.from_sequence([0, 2, 2])
        assert not verify_simplicial(phi, path, path)

    def test_wrong_size(self, hollow_triangle):
        assert not verify_simplicial(SimplicialMap.identity(2), hollow_triangle, hollow_triangle)

    def test_vertex_out_of_range(self, hollow_triangle):
        phi = SimplicialMap.from_sequence([0, 1, 7])
        assert not verify_simplicial(phi, hollow_triangle, hollow_triangle)

    def test_ball_test_above_truncation(self):
        # the target nerve stores only edges; triangle images are decided geometrically
        target = build_cech_nerve([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]], 0.2, 1)
        source = SimplicialComplex.from_simplices([(0, 1, 2)], d_max=2, close=True)
        assert verify_simplicial(SimplicialMap.identity(3), source, target)
