"""Smith normal form over the integers with tracked unimodular transforms."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.errors import DomainError
from src.nerve_recon.homology.matrices import IntArray, IntegerMatrix, as_integer_array, identity

PivotStrategy = Literal["smallest", "first"]


@dataclass
class SNFResult:
    """``u @ m @ v == s`` with ``u``/``v`` unimodular; inverses are carried along.

    ``v`` and ``v_inv`` are ``None`` when column operations were not tracked.
    """

    u: IntArray
    s: IntArray
    v: IntArray | None
    u_inv: IntArray
    v_inv: IntArray | None

    @property
    def diagonal(self) -> list[int]:
        size = min(self.s.shape)
        return [int(self.s[i, i]) for i in range(size)]

    @property
    def rank(self) -> int:
        return sum(1 for value in self.diagonal if value != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [value for value in self.diagonal if value != 0]


class _Eliminator:
    """Applies elementary operations to ``a`` while keeping ``u a_0 v == a`` and the inverses."""

    def __init__(self, a: IntArray, track_columns: bool = True) -> None:
        rows, cols = a.shape
        self.a = a
        self.u, self.u_inv = identity(rows), identity(rows)
        self.v: IntArray | None = identity(cols) if track_columns else None
        self.v_inv: IntArray | None = identity(cols) if track_columns else None

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[[i, j], :] = self.a[[j, i], :]
        self.u[[i, j], :] = self.u[[j, i], :]
        self.u_inv[:, [i, j]] = self.u_inv[:, [j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[:, [i, j]] = self.a[:, [j, i]]
        if self.v is None or self.v_inv is None:
            return
        self.v[:, [i, j]] = self.v[:, [j, i]]
        self.v_inv[[i, j], :] = self.v_inv[[j, i], :]

    def add_row(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]."""
        self.a[target, :] = self.a[target, :] + factor * self.a[source, :]
        self.u[target, :] = self.u[target, :] + factor * self.u[source, :]
        self.u_inv[:, source] = self.u_inv[:, source] - factor * self.u_inv[:, target]

    def add_col(self, target: int, source: int, factor: int) -> None:
        """col[target] += factor * col[source]."""
        self.a[:, target] = self.a[:, target] + factor * self.a[:, source]
        if self.v is None or self.v_inv is None:
            return
        self.v[:, target] = self.v[:, target] + factor * self.v[:, source]
        self.v_inv[source, :] = self.v_inv[source, :] - factor * self.v_inv[target, :]

    def negate_row(self, i: int) -> None:
        self.a[i, :] = -self.a[i, :]
        self.u[i, :] = -self.u[i, :]
        self.u_inv[:, i] = -self.u_inv[:, i]


def _choose(candidates: list[tuple[int, int]], a: IntArray, pivot: PivotStrategy) -> tuple[int, int]:
    if pivot == "first":
        return candidates[0]
    return min(candidates, key=lambda ij: (abs(a[ij]), ij[1], ij[0]))


def _select_pivot(a: IntArray, t: int, pivot: PivotStrategy) -> tuple[int, int] | None:
    block = a[t:, t:]
    nonzero = np.argwhere(block != 0)
    if len(nonzero) == 0:
        return None
    # column-major scan order for the "first" strategy
    candidates = sorted(((int(i) + t, int(j) + t) for i, j in nonzero), key=lambda ij: (ij[1], ij[0]))
    return _choose(candidates, a, pivot)


def smith_normal_form(
    matrix: ArrayLike | IntegerMatrix,
    pivot: PivotStrategy = "smallest",
    *,
    track_columns: bool = True,
) -> SNFResult:
    """Exact Smith normal form ``s = u m v`` with ``s[i, i]`` dividing ``s[i+1, i+1]``.

    ``pivot`` picks the next pivot among the remaining block: ``"smallest"`` takes the
    entry of least magnitude, ``"first"`` the first nonzero in column-major order. Both
    yield the same diagonal. With ``track_columns=False`` only ``u`` and its inverse are
    kept, which is all the image lattice of ``m`` needs.
    """
    if pivot not in ("smallest", "first"):
        raise DomainError(f"unknown pivot strategy {pivot!r}")
    ops = _Eliminator(as_integer_array(matrix), track_columns=track_columns)
    a = ops.a
    rows, cols = a.shape

    t = 0
    while t < min(rows, cols):
        position = _select_pivot(a, t, pivot)
        if position is None:
            break
        ops.swap_rows(t, position[0])
        ops.swap_cols(t, position[1])

        while True:
            p = a[t, t]
            for i in range(t + 1, rows):
                if a[i, t] != 0:
                    ops.add_row(i, t, -(a[i, t] // p))
            left = [(i, t) for i in range(t + 1, rows) if a[i, t] != 0]
            if left:
                ops.swap_rows(t, _choose(left, a, pivot)[0])
                continue

            for j in range(t + 1, cols):
                if a[t, j] != 0:
                    ops.add_col(j, t, -(a[t, j] // p))
            left = [(t, j) for j in range(t + 1, cols) if a[t, j] != 0]
            if left:
                ops.swap_cols(t, _choose(left, a, pivot)[1])
                continue

            block = a[t + 1 :, t + 1 :]
            stray = np.argwhere(block % p != 0) if block.size else np.empty((0, 2), dtype=int)
            if len(stray):
                ops.add_row(t, int(stray[0][0]) + t + 1, 1)
                continue
            break

        if a[t, t] < 0:
            ops.negate_row(t)
        t += 1

    return SNFResult(u=ops.u, s=a, v=ops.v, u_inv=ops.u_inv, v_inv=ops.v_inv)


def invariant_factors(matrix: ArrayLike | IntegerMatrix) -> list[int]:
    """Nonzero diagonal of the Smith normal form."""
    return smith_normal_form(matrix, track_columns=False).invariant_factors
