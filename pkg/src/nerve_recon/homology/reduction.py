"""Chain-complex reduction by unit pivots.

Each elimination removes a pair (``coface`` of dimension d, ``face`` of dimension d-1)
with ``<boundary(coface), face> = +-1`` and rewrites the remaining d-boundaries. The
eliminations are recorded so chains can be projected onto the reduced complex and
lifted back; both maps are chain homotopy equivalences, so the residual complex has the
homology of the original and is usually tiny for nerves of sampled manifolds.
"""

import heapq
import logging
from dataclasses import dataclass, field

import numpy as np

from src.nerve_recon.complex import SimplicialComplex
from src.nerve_recon.homology.matrices import IntArray, boundary_columns

logger = logging.getLogger("src.nerve_recon.homology")

Chain = dict[int, int]


@dataclass(frozen=True)
class Elimination:
    dim: int
    coface: int
    face: int
    unit: int
    boundary: Chain  # boundary of the coface at elimination time, face included
    face_row: Chain  # <boundary(x), face> for every other surviving cell x of dimension ``dim``


@dataclass
class ReducedComplex:
    """Residual cells per dimension, their boundaries, and the elimination log."""

    top: int
    alive: list[set[int]]
    boundaries: list[dict[int, Chain]]
    cofaces: list[dict[int, Chain]]
    eliminations: list[Elimination] = field(default_factory=list)

    @classmethod
    def from_complex(cls, complex_: SimplicialComplex, top: int) -> "ReducedComplex":
        alive = [set(range(complex_.count(d))) for d in range(top + 1)]
        boundaries: list[dict[int, Chain]] = [{}]
        cofaces: list[dict[int, Chain]] = [{cell: {} for cell in alive[d]} for d in range(top)]
        for d in range(1, top + 1):
            columns = boundary_columns(complex_, d)
            boundaries.append(dict(enumerate(columns)))
            for cell, column in enumerate(columns):
                for face, value in column.items():
                    cofaces[d - 1][face][cell] = value
        return cls(top=top, alive=alive, boundaries=boundaries, cofaces=cofaces)

    def basis(self, dim: int) -> list[int]:
        return sorted(self.alive[dim])

    def boundary_array(self, dim: int, nonzero_only: bool = False) -> IntArray:
        """Dense residual boundary from ``dim`` to ``dim - 1``; a ``0 x n`` matrix in dimension 0.

        ``nonzero_only`` drops cells whose residual boundary vanishes; the column span is
        unchanged.
        """
        cols = self.basis(dim)
        if nonzero_only:
            cols = [cell for cell in cols if dim > 0 and self.boundaries[dim][cell]]
        if dim == 0:
            return np.zeros((0, len(cols)), dtype=object)
        rows = self.basis(dim - 1)
        row_of = {cell: i for i, cell in enumerate(rows)}
        out = np.zeros((len(rows), len(cols)), dtype=object)
        for j, cell in enumerate(cols):
            for face, value in self.boundaries[dim][cell].items():
                out[row_of[face], j] = value
        return out

    # ── elimination ──

    def _eliminate(self, dim: int, coface: int, face: int) -> None:
        unit = self.boundaries[dim][coface][face]
        boundary = dict(self.boundaries[dim][coface])
        face_row = {x: v for x, v in self.cofaces[dim - 1][face].items() if x != coface}

        for cell, coefficient in face_row.items():
            shift = coefficient * unit
            column = self.boundaries[dim][cell]
            for target, value in boundary.items():
                updated = column.get(target, 0) - shift * value
                if updated:
                    column[target] = updated
                    self.cofaces[dim - 1][target][cell] = updated
                else:
                    column.pop(target, None)
                    self.cofaces[dim - 1][target].pop(cell, None)

        for target in boundary:
            self.cofaces[dim - 1][target].pop(coface, None)
        del self.boundaries[dim][coface]
        self.alive[dim].discard(coface)
        if dim < self.top:
            for cell in self.cofaces[dim].pop(coface, {}):
                self.boundaries[dim + 1][cell].pop(coface, None)

        if dim - 1 >= 1:
            for target in self.boundaries[dim - 1].pop(face):
                self.cofaces[dim - 2][target].pop(face, None)
        self.cofaces[dim - 1].pop(face)
        self.alive[dim - 1].discard(face)

        self.eliminations.append(
            Elimination(
                dim=dim, coface=coface, face=face, unit=unit, boundary=boundary, face_row=face_row
            )
        )

    def _exhaust(self, dim: int) -> int:
        """Eliminate unit pairs in one dimension, faces with fewest cofaces first."""
        cofaces = self.cofaces[dim - 1]
        heap = [(len(row), face) for face, row in cofaces.items() if row]
        heapq.heapify(heap)
        done = 0
        while heap:
            size, face = heapq.heappop(heap)
            row = cofaces.get(face)
            if not row:
                continue
            if len(row) != size:
                heapq.heappush(heap, (len(row), face))
                continue
            units = [cell for cell, value in row.items() if value in (1, -1)]
            if not units:
                continue
            coface = min(units, key=lambda cell: (len(self.boundaries[dim][cell]), cell))
            touched = [f for f in self.boundaries[dim][coface] if f != face]
            self._eliminate(dim, coface, face)
            done += 1
            for f in touched:
                if cofaces.get(f):
                    heapq.heappush(heap, (len(cofaces[f]), f))
        return done

    def reduce(self) -> "ReducedComplex":
        while True:
            done = sum(self._exhaust(dim) for dim in range(self.top, 0, -1))
            if done == 0:
                break
        logger.debug(
            "chain_reduced eliminations=%d residual=%s",
            len(self.eliminations),
            [len(cells) for cells in self.alive],
        )
        return self

    # ── chain maps ──

    def project(self, dim: int, chain: Chain) -> Chain:
        """Image of an original ``dim``-chain in the residual complex."""
        out = {cell: value for cell, value in chain.items() if value}
        for step in self.eliminations:
            if step.dim - 1 == dim:
                coefficient = out.pop(step.face, 0)
                if coefficient:
                    shift = coefficient * step.unit
                    for target, value in step.boundary.items():
                        if target == step.face:
                            continue
                        updated = out.get(target, 0) - shift * value
                        if updated:
                            out[target] = updated
                        else:
                            out.pop(target, None)
            elif step.dim == dim:
                out.pop(step.coface, None)
        return out

    def lift(self, dim: int, chain: Chain) -> Chain:
        """Original chain representing a residual ``dim``-chain."""
        out = {cell: value for cell, value in chain.items() if value}
        for step in reversed(self.eliminations):
            if step.dim != dim:
                continue
            pairing = sum(value * step.face_row.get(cell, 0) for cell, value in out.items())
            if pairing:
                updated = out.get(step.coface, 0) - pairing * step.unit
                if updated:
                    out[step.coface] = updated
                else:
                    out.pop(step.coface, None)
        return out


def reduce_chain_complex(complex_: SimplicialComplex, top: int) -> ReducedComplex:
    """Reduce the chain complex of ``complex_`` truncated at dimension ``top``."""
    return ReducedComplex.from_complex(complex_, top).reduce()
