"""Simplices, simplicial complexes and vertex maps between them."""

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from src.nerve_recon.errors import DomainError, NonSimplicialMapError
from src.nerve_recon.geometry import PointCloud, cech_face_test

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Sorted, duplicate-free vertex tuple."""
    return tuple(sorted({int(v) for v in vertices}))


@dataclass(eq=False)
class SimplicialComplex:
    """Finite complex stored as per-dimension sorted simplex lists.

    ``points`` and ``epsilon`` are set for Čech nerves and left ``None`` for abstract
    complexes built by hand. ``simplices[d]`` holds the d-simplices in lexicographic order;
    that order fixes the basis of every chain group.
    """

    simplices: list[list[Simplex]]
    d_max: int
    points: PointCloud | None = None
    epsilon: float | None = None
    _index: list[dict[Simplex, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.d_max < 0:
            raise DomainError(f"d_max must be non-negative, got {self.d_max}")
        levels = [sorted(level) for level in self.simplices[: self.d_max + 1]]
        while len(levels) < self.d_max + 1:
            levels.append([])
        self.simplices = levels
        self._index = [{s: i for i, s in enumerate(level)} for level in levels]

    @classmethod
    def from_simplices(
        cls,
        simplices: Iterable[Sequence[int]],
        d_max: int | None = None,
        points: PointCloud | None = None,
        epsilon: float | None = None,
        close: bool = False,
    ) -> "SimplicialComplex":
        """Group simplices by dimension; ``close=True`` adds every face as well."""
        found: set[Simplex] = set()
        for raw in simplices:
            simplex = tuple(int(v) for v in raw)
            if close:
                found.update(_faces_of(as_simplex(simplex)))
            else:
                found.add(simplex)
        top = max((len(s) - 1 for s in found), default=0)
        d_max = top if d_max is None else d_max
        levels: list[list[Simplex]] = [[] for _ in range(d_max + 1)]
        for simplex in found:
            if len(simplex) - 1 <= d_max:
                levels[len(simplex) - 1].append(simplex)
        return cls(simplices=levels, d_max=d_max, points=points, epsilon=epsilon)

    @property
    def vertex_count(self) -> int:
        return len(self.simplices[0])

    @property
    def dimension(self) -> int:
        """Largest dimension with at least one simplex (-1 when empty)."""
        for d in range(self.d_max, -1, -1):
            if self.simplices[d]:
                return d
        return -1

    def count(self, dim: int) -> int:
        if dim < 0 or dim > self.d_max:
            return 0
        return len(self.simplices[dim])

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    def index_of(self, simplex: Simplex) -> int | None:
        dim = len(simplex) - 1
        if dim < 0 or dim > self.d_max:
            return None
        return self._index[dim].get(simplex)

    def __contains__(self, simplex: object) -> bool:
        return isinstance(simplex, tuple) and self.index_of(simplex) is not None

    def has_simplex(self, simplex: Simplex) -> bool:
        """Membership that also answers above ``d_max`` for Čech nerves via the ball test."""
        if len(simplex) - 1 <= self.d_max:
            return simplex in self
        if self.points is None or self.epsilon is None:
            return False
        if any(v < 0 or v >= len(self.points) for v in simplex):
            return False
        return cech_face_test(self.points[list(simplex)], self.epsilon)

    def iter_simplices(self) -> Iterable[Simplex]:
        for level in self.simplices:
            yield from level


def _faces_of(simplex: Simplex) -> set[Simplex]:
    faces: set[Simplex] = set()
    size = len(simplex)
    for mask in range(1, 1 << size):
        faces.add(tuple(simplex[i] for i in range(size) if mask >> i & 1))
    return faces


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex assignment ``source vertex i -> assignment[i]``."""

    assignment: tuple[int, ...]

    @classmethod
    def from_sequence(cls, values: Sequence[int] | np.ndarray) -> "SimplicialMap":
        return cls(assignment=tuple(int(v) for v in values))

    @classmethod
    def identity(cls, count: int) -> "SimplicialMap":
        return cls(assignment=tuple(range(count)))

    @classmethod
    def constant(cls, count: int, vertex: int) -> "SimplicialMap":
        return cls(assignment=(int(vertex),) * count)

    def __len__(self) -> int:
        return len(self.assignment)

    def image(self, simplex: Simplex) -> Simplex:
        return as_simplex(self.assignment[v] for v in simplex)

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """Composite ``other ∘ self``."""
        try:
            return SimplicialMap(assignment=tuple(other.assignment[v] for v in self.assignment))
        except IndexError as exc:
            raise NonSimplicialMapError("composite is not defined on every vertex") from exc
