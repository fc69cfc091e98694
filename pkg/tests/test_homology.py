"""Tests for boundary matrices, Smith normal form, chain reduction, homology and induced maps."""

import numpy as np
import pytest

from src.nerve_recon.complex import SimplicialComplex, SimplicialMap, build_cech_nerve
from src.nerve_recon.errors import DomainError, NonSimplicialMapError
from src.nerve_recon.homology import (
    IntegerMatrix,
    boundary_matrix,
    chain_image,
    h1_multiplier,
    homology,
    induced_invariant_factors,
    induced_map,
    induced_maps,
    invariant_factors,
    matmul,
    reduce_chain_complex,
    smith_normal_form,
)
from src.nerve_recon.homology.matrices import identity
from src.nerve_recon.manifolds import ManifoldModel, sample_uniform

RP2_FACES = [
    (1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
    (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6),
]


def cycle(length: int) -> SimplicialComplex:
    """Hollow polygon on ``length`` vertices, with room for H_1."""
    edges = [(i, (i + 1) % length) for i in range(length)]
    return SimplicialComplex.from_simplices(edges, d_max=2, close=True)


def wrap(source_length: int, target_length: int, sign: int = 1) -> SimplicialMap:
    """``i -> sign * i mod target_length``; degree ``sign * source_length / target_length``."""
    return SimplicialMap.from_sequence([(sign * i) % target_length for i in range(source_length)])


def rp2() -> SimplicialComplex:
    return SimplicialComplex.from_simplices(
        [tuple(v - 1 for v in face) for face in RP2_FACES], d_max=3, close=True
    )


def torus7() -> SimplicialComplex:
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_simplices(faces, d_max=3, close=True)


def as_dense(chain: dict[int, int], size: int) -> np.ndarray:
    out = np.zeros((size, 1), dtype=object)
    for cell, value in chain.items():
        out[cell, 0] = value
    return out


# ── boundary matrices ───────────────────────────────────────────────


class TestBoundaryMatrix:
    def test_triangle_signs(self):
        triangle = SimplicialComplex.from_simplices([(0, 1, 2)], close=True)
        column = boundary_matrix(triangle, 2).to_array()[:, 0]
        # faces in order (0,1), (0,2), (1,2): d(012) = 12 - 02 + 01
        assert list(column) == [1, -1, 1]

    @pytest.mark.parametrize("builder", [rp2, torus7])
    def test_boundary_of_boundary(self, builder):
        complex_ = builder()
        for dim in range(2, complex_.d_max + 1):
            product = matmul(
                boundary_matrix(complex_, dim - 1).to_array(), boundary_matrix(complex_, dim).to_array()
            )
            assert not np.any(product != 0)

    def test_boundary_of_boundary_on_nerve(self):
        points = sample_uniform(ManifoldModel(kind="sphere", radius=1.0), 40, 3)
        nerve = build_cech_nerve(points, 0.5, 3)
        for dim in range(2, 4):
            product = matmul(boundary_matrix(nerve, dim - 1).to_array(), boundary_matrix(nerve, dim).to_array())
            assert not np.any(product != 0)

    def test_dimension_range(self, hollow_triangle):
        with pytest.raises(DomainError):
            boundary_matrix(hollow_triangle, 0)
        with pytest.raises(DomainError):
            boundary_matrix(hollow_triangle, 3)

    def test_sparse_round_trip(self):
        dense = [[0, 2], [-1, 0], [0, 0]]
        sparse = IntegerMatrix.from_array(dense)
        assert sparse.nnz() == 2
        assert sparse.to_array().tolist() == dense


# ── smith normal form ───────────────────────────────────────────────


class TestSmithNormalForm:
    def test_coprime_diagonal(self):
        assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]

    def test_divisibility_chain(self):
        assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]

    def test_zero_and_empty(self):
        assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
        assert smith_normal_form(np.zeros((0, 3), dtype=object)).invariant_factors == []

    def test_non_integral_rejected(self):
        with pytest.raises(DomainError):
            smith_normal_form([[0.5]])

    def test_unknown_pivot(self):
        with pytest.raises(DomainError):
            smith_normal_form([[1]], pivot="largest")

    def test_random_identities(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            rows, cols = (int(v) for v in rng.integers(1, 6, size=2))
            m = rng.integers(-6, 7, size=(rows, cols)).astype(object)
            result = smith_normal_form(m)
            assert np.array_equal(matmul(matmul(result.u, m), result.v), result.s)
            assert np.array_equal(matmul(result.u, result.u_inv), identity(rows))
            assert np.array_equal(matmul(result.v, result.v_inv), identity(cols))
            off_diagonal = result.s.copy()
            for i in range(min(rows, cols)):
                off_diagonal[i, i] = 0
            assert not np.any(off_diagonal != 0)
            factors = result.invariant_factors
            assert all(f > 0 for f in factors)
            assert all(b % a == 0 for a, b in zip(factors, factors[1:]))

    def test_pivot_strategy_invariance(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            m = rng.integers(-9, 10, size=(4, 5)).astype(object)
            assert smith_normal_form(m, "first").diagonal == smith_normal_form(m, "smallest").diagonal

    def test_untracked_columns_keep_row_transform(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            rows, cols = (int(v) for v in rng.integers(1, 7, size=2))
            m = rng.integers(-5, 6, size=(rows, cols)).astype(object)
            tracked = smith_normal_form(m)
            untracked = smith_normal_form(m, track_columns=False)
            assert untracked.v is None and untracked.v_inv is None
            assert untracked.diagonal == tracked.diagonal
            assert np.array_equal(matmul(untracked.u, untracked.u_inv), identity(rows))

    def test_wide_matrix_without_column_tracking(self):
        # one row against many columns; a tracked v would be cols x cols
        m = np.zeros((1, 50_000), dtype=object)
        m[0, 7] = 4
        m[0, 49_999] = 6
        result = smith_normal_form(m, track_columns=False)
        assert result.invariant_factors == [2]


# ── homology ────────────────────────────────────────────────────────


class TestHomology:
    def test_hollow_triangle(self, hollow_triangle):
        summary = homology(hollow_triangle, 1)
        assert summary.betti == [1, 1]
        assert summary.torsion_free

    def test_filled_triangle(self):
        triangle = SimplicialComplex.from_simplices([(0, 1, 2)], d_max=2, close=True)
        assert homology(triangle, 1).betti == [1, 0]

    def test_octahedron_is_a_sphere(self, octahedron):
        assert homology(octahedron, 2).betti == [1, 0, 1]

    def test_torus(self):
        assert homology(torus7(), 2).betti == [1, 2, 1]

    def test_projective_plane_torsion(self):
        summary = homology(rp2(), 2)
        assert summary.betti == [1, 0, 0]
        assert summary.torsion == [[], [2], []]
        assert not summary.torsion_free

    def test_disjoint_pieces(self):
        complex_ = SimplicialComplex.from_simplices([(0,), (1,), (2, 3)], d_max=1, close=True)
        assert homology(complex_, 0).betti == [3]

    def test_needs_one_more_dimension(self, hollow_triangle):
        with pytest.raises(DomainError):
            homology(hollow_triangle, 2)

    def test_generators_are_cycles(self):
        complex_ = torus7()
        summary = homology(complex_, 2)
        d1 = boundary_matrix(complex_, 1).to_array()
        for chain in summary.basis.free_generator_chains(1):
            assert not np.any(matmul(d1, as_dense(chain, complex_.count(1))) != 0)
        assert len(summary.generators[1]) == 2

    def test_generator_labels(self, hollow_triangle):
        (generator,) = homology(hollow_triangle, 1).generators[1]
        assert set(generator) == {"0 1", "0 2", "1 2"}
        assert {abs(v) for v in generator.values()} == {1}

    def test_project_lift_on_generators(self):
        complex_ = torus7()
        reduced = reduce_chain_complex(complex_, 2)
        summary = homology(complex_, 1)
        for chain in summary.basis.free_generator_chains(1):
            residual = reduced.project(1, chain)
            assert reduced.project(1, reduced.lift(1, residual)) == residual

    def test_nerve_of_circle_sample(self, circle):
        # derived sample size for eps 0.4, delta 0.1; tens of thousands of triangles
        nerve = build_cech_nerve(sample_uniform(circle, 204, 4), 0.4, 2)
        assert nerve.count(1) > 4_000
        assert nerve.count(2) > 40_000
        assert homology(nerve, 1).betti == [1, 1]

    def test_residual_top_cells_without_boundary_are_dropped(self, circle):
        nerve = build_cech_nerve(sample_uniform(circle, 80, 2), 0.4, 2)
        reduced = reduce_chain_complex(nerve, 2)
        full = reduced.boundary_array(2)
        trimmed = reduced.boundary_array(2, nonzero_only=True)
        assert trimmed.shape[0] == full.shape[0]
        assert trimmed.shape[1] < full.shape[1]
        assert all(any(v != 0 for v in trimmed[:, j]) for j in range(trimmed.shape[1]))

    @pytest.mark.parametrize("builder, up_to", [(torus7, 2), (rp2, 2), (lambda: cycle(7), 1)])
    def test_relabelling_vertices(self, builder, up_to):
        complex_ = builder()
        expected = homology(complex_, up_to)
        rng = np.random.default_rng(17)
        every = [s for d in range(complex_.d_max + 1) for s in complex_.simplices[d]]
        for _ in range(20):
            relabel = rng.permutation(complex_.vertex_count)
            shuffled = SimplicialComplex.from_simplices(
                [[relabel[v] for v in s] for s in every],
                d_max=complex_.d_max,
                close=True,
            )
            summary = homology(shuffled, up_to)
            assert summary.betti == expected.betti
            assert summary.torsion == expected.torsion

    @pytest.mark.parametrize("builder, up_to", [(torus7, 2), (rp2, 2), (lambda: cycle(7), 1)])
    def test_cone_is_acyclic(self, builder, up_to):
        base = builder()
        apex = base.vertex_count
        cone = SimplicialComplex.from_simplices(
            [s + (apex,) for d in range(base.d_max + 1) for s in base.simplices[d]],
            d_max=base.d_max + 1,
            close=True,
        )
        summary = homology(cone, up_to)
        assert summary.betti == [1] + [0] * up_to
        assert summary.torsion_free


# ── induced maps ────────────────────────────────────────────────────


class TestInducedMaps:
    def test_identity(self):
        hexagon = cycle(6)
        (h0, h1) = induced_maps(SimplicialMap.identity(6), hexagon, hexagon, 1)
        assert h0.matrix == [[1]]
        assert h1.matrix == [[1]]

    def test_wrap_twice(self):
        induced = induced_map(wrap(6, 3), cycle(6), cycle(3), 1)
        assert abs(induced.matrix[0][0]) == 2
        assert h1_multiplier(induced) == (2, True)
        assert induced_invariant_factors(induced) == [2]

    def test_reflection_is_orientation_reversing(self):
        hexagon = cycle(6)
        shared = homology(hexagon, 1)
        identity_map = induced_map(SimplicialMap.identity(6), hexagon, hexagon, 1, shared, shared)
        reflection = induced_map(wrap(6, 6, -1), hexagon, hexagon, 1, shared, shared)
        assert reflection.matrix[0][0] == -identity_map.matrix[0][0]

    def test_constant_map_kills_h1(self):
        induced = induced_map(SimplicialMap.constant(6, 0), cycle(6), cycle(3), 1)
        assert induced.matrix == [[0]]
        assert induced_invariant_factors(induced) == []

    def test_integer_coefficients_separate_degree_two_from_constant(self):
        twice = induced_map(wrap(6, 3), cycle(6), cycle(3), 1).matrix[0][0]
        constant = induced_map(SimplicialMap.constant(6, 0), cycle(6), cycle(3), 1).matrix[0][0]
        assert twice != constant
        # reduced mod 2 both maps vanish and the degree is lost
        assert twice % 2 == constant % 2 == 0

    def test_chain_image_collapses_degenerate_simplices(self):
        hexagon = cycle(6)
        phi = SimplicialMap.from_sequence([0, 0, 1, 2, 3, 4])
        assert chain_image(phi, hexagon, hexagon, 1, {0: 1}) == {}

    def test_non_simplicial_rejected(self):
        with pytest.raises(NonSimplicialMapError):
            induced_map(SimplicialMap.from_sequence([0, 3, 0, 3, 0, 3]), cycle(6), cycle(6), 1)

    def test_multiplier_needs_rank_one(self):
        torus = torus7()
        induced = induced_map(SimplicialMap.identity(7), torus, torus, 1)
        assert induced.shape == (2, 2)
        with pytest.raises(DomainError):
            h1_multiplier(induced)

    @pytest.mark.parametrize(
        "k1, k2, base, s1, s2",
        [
            (k1, k2, base, s1, s2)
            for k1, k2, base in [(1, 1, 3), (2, 1, 3), (1, 2, 3), (2, 2, 3), (3, 1, 4)]
            for s1, s2 in [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        ],
    )
    def test_functoriality(self, k1, k2, base, s1, s2):
        c_length, b_length, a_length = base, base * k2, base * k2 * k1
        a, b, c = cycle(a_length), cycle(b_length), cycle(c_length)
        ha, hb, hc = homology(a, 1), homology(b, 1), homology(c, 1)
        phi = wrap(a_length, b_length, s1)
        psi = wrap(b_length, c_length, s2)
        first = induced_map(phi, a, b, 1, ha, hb).matrix[0][0]
        second = induced_map(psi, b, c, 1, hb, hc).matrix[0][0]
        composite = induced_map(phi.then(psi), a, c, 1, ha, hc).matrix[0][0]
        assert composite == second * first
        assert abs(composite) == k1 * k2
