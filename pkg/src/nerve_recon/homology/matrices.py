"""Exact integer matrices and simplicial boundary operators.

Dense integer matrices are numpy arrays of ``dtype=object`` holding Python ints, so
every product and elimination step is carried out in arbitrary precision.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.nerve_recon.complex import SimplicialComplex
from src.nerve_recon.errors import DimensionMismatchError, DomainError

IntArray = NDArray[np.object_]


def identity(size: int) -> IntArray:
    out = np.zeros((size, size), dtype=object)
    for i in range(size):
        out[i, i] = 1
    return out


def as_integer_array(values: "ArrayLike | IntegerMatrix") -> IntArray:
    """Copy to a 2-D object array of Python ints, rejecting non-integral entries."""
    if isinstance(values, IntegerMatrix):
        return values.to_array()
    raw = np.asarray(values, dtype=object)
    if raw.ndim != 2:
        raise DimensionMismatchError(f"integer matrix must be two-dimensional, got {raw.shape}")
    out = np.zeros(raw.shape, dtype=object)
    for index, value in np.ndenumerate(raw):
        as_int = int(value)
        if as_int != value:
            raise DomainError(f"non-integral entry {value!r} at {index}")
        out[index] = as_int
    return out


def matmul(a: IntArray, b: IntArray) -> IntArray:
    """Exact product; empty inner dimensions give an integer zero matrix."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return a.dot(b)


@dataclass
class IntegerMatrix:
    """Sparse column-major integer matrix: ``columns[j]`` maps row index to entry."""

    rows: int
    cols: int
    columns: list[dict[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.columns:
            self.columns = [{} for _ in range(self.cols)]
        if len(self.columns) != self.cols:
            raise DimensionMismatchError(f"expected {self.cols} columns, got {len(self.columns)}")
        for column in self.columns:
            if any(not 0 <= r < self.rows for r in column):
                raise DimensionMismatchError("row index out of range")

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return sum(len(column) for column in self.columns)

    def to_array(self) -> IntArray:
        out = np.zeros((self.rows, self.cols), dtype=object)
        for j, column in enumerate(self.columns):
            for i, value in column.items():
                out[i, j] = int(value)
        return out

    @classmethod
    def from_array(cls, values: ArrayLike) -> "IntegerMatrix":
        dense = as_integer_array(values)
        rows, cols = dense.shape
        columns = [
            {i: dense[i, j] for i in range(rows) if dense[i, j] != 0} for j in range(cols)
        ]
        return cls(rows=rows, cols=cols, columns=columns)


def boundary_columns(complex_: SimplicialComplex, dim: int) -> list[dict[int, int]]:
    """Columns of the ``dim`` boundary operator as ``{face index: sign}`` dicts."""
    columns: list[dict[int, int]] = []
    for simplex in complex_.simplices[dim]:
        column: dict[int, int] = {}
        for position in range(dim + 1):
            face = simplex[:position] + simplex[position + 1 :]
            row = complex_.index_of(face)
            if row is None:
                raise DomainError(f"face {face} of {simplex} is missing; complex is not closed")
            column[row] = -1 if position % 2 else 1
        columns.append(column)
    return columns


def boundary_matrix(complex_: SimplicialComplex, dim: int) -> IntegerMatrix:
    """Matrix of the boundary map from ``dim``-chains to ``(dim-1)``-chains.

    Removing the vertex in position ``i`` contributes sign ``(-1)**i``; rows and columns
    follow the complex's sorted simplex order.
    """
    if not 1 <= dim <= complex_.d_max:
        raise DomainError(f"boundary dimension must lie in [1, {complex_.d_max}], got {dim}")
    return IntegerMatrix(
        rows=complex_.count(dim - 1),
        cols=complex_.count(dim),
        columns=boundary_columns(complex_, dim),
    )


def chain_from_dict(chain: dict[int, int], basis: Sequence[int]) -> list[int]:
    """Dense coefficient vector of a sparse chain over an ordered cell list."""
    position = {cell: i for i, cell in enumerate(basis)}
    dense = [0] * len(basis)
    for cell, value in chain.items():
        dense[position[cell]] = value
    return dense
