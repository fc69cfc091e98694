"""Shared fixtures: model manifolds and small hand-built complexes."""

import numpy as np
import pytest

from src.nerve_recon.complex import SimplicialComplex
from src.nerve_recon.manifolds import ManifoldModel


@pytest.fixture
def circle() -> ManifoldModel:
    return ManifoldModel(kind="circle", radius=1.0)


@pytest.fixture
def sphere() -> ManifoldModel:
    return ManifoldModel(kind="sphere", radius=1.0)


@pytest.fixture
def torus() -> ManifoldModel:
    return ManifoldModel(kind="torus", radius=2.0, tube_radius=0.5)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def hollow_triangle() -> SimplicialComplex:
    return SimplicialComplex.from_simplices([(0, 1), (1, 2), (0, 2)], d_max=2, close=True)


@pytest.fixture
def octahedron() -> SimplicialComplex:
    """Boundary of the octahedron: a triangulated 2-sphere on six vertices."""
    faces = [
        (a, b, c)
        for a in (0, 1)
        for b in (2, 3)
        for c in (4, 5)
    ]
    return SimplicialComplex.from_simplices(faces, d_max=3, close=True)
