"""Optimal assignment over rectangular score matrices.

Shortest-augmenting-path implementation of the Hungarian method with
potentials, O(n^2 m).  All scans run in ascending index order, so equal
alternatives resolve to the lowest row and then the lowest column, making
results reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import NonFiniteEntry

Sense = Literal["maximize", "minimize"]


@dataclass(frozen=True)
class ScoreMatrix:
    """Rectangular matrix of per-pair scores, row-major."""

    rows: int
    cols: int
    values: tuple[float, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must have at least one row and column")
        if len(self.values) != self.rows * self.cols:
            raise ValueError("value count does not match matrix shape")
        for k, v in enumerate(self.values):
            if not math.isfinite(v):
                raise NonFiniteEntry(
                    f"matrix entry ({k // self.cols}, {k % self.cols}) is {v!r}"
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "ScoreMatrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        flat = tuple(float(v) for row in rows for v in row)
        return cls(n, m, flat)

    def at(self, i: int, j: int) -> float:
        return self.values[i * self.cols + j]


@dataclass(frozen=True)
class Assignment:
    """Selected (row, col) pairs, sorted by row, and their value sum."""

    pairs: tuple[tuple[int, int], ...]
    objective: float


def _min_cost_rows(cost: list[list[float]], n: int, m: int) -> list[int]:
    """Column assigned to each row, minimizing total cost.  Needs n <= m."""
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    matched_row = [0] * (m + 1)  # 1-based row matched to each column
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        matched_row[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = matched_row[j0]
            row = cost[i0 - 1]
            u0 = u[i0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = row[j - 1] - u0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[matched_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if matched_row[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            matched_row[j0] = matched_row[j1]
            j0 = j1
    col_of_row = [-1] * n
    for j in range(1, m + 1):
        if matched_row[j]:
            col_of_row[matched_row[j] - 1] = j - 1
    return col_of_row


def solve(matrix: ScoreMatrix, sense: Sense = "maximize") -> Assignment:
    """Globally optimal assignment of rows to columns.

    Uses min(rows, cols) pairings, each row and column at most once.  The
    objective is the sum of the selected original matrix values, added in
    row order.
    """
    if sense not in ("maximize", "minimize"):
        raise ValueError(f"unknown sense {sense!r}")
    negate = sense == "maximize"
    r, c = matrix.rows, matrix.cols
    if r <= c:
        cost = [
            [-matrix.at(i, j) if negate else matrix.at(i, j) for j in range(c)]
            for i in range(r)
        ]
        col_of_row = _min_cost_rows(cost, r, c)
        pairs = tuple((i, col_of_row[i]) for i in range(r))
    else:
        cost = [
            [-matrix.at(i, j) if negate else matrix.at(i, j) for i in range(r)]
            for j in range(c)
        ]
        row_of_col = _min_cost_rows(cost, c, r)
        pairs = tuple(sorted((row_of_col[j], j) for j in range(c)))
    objective = 0.0
    for i, j in pairs:
        objective += matrix.at(i, j)
    return Assignment(pairs, objective)
