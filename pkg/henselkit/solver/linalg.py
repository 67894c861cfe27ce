"""Gaussian elimination over a tower stage, pivoting on the entry of least valuation."""

from __future__ import annotations

from collections.abc import Sequence

from henselkit.lib.errors import SingularJacobian
from henselkit.series.tower import Coefficient, valuation, vanishes

Matrix = list[list[Coefficient]]


def _pivot(rows: Matrix, col: int, start: int) -> int | None:
    best: int | None = None
    for r in range(start, len(rows)):
        entry = rows[r][col]
        if vanishes(entry):
            continue
        if best is None or valuation(entry) < valuation(rows[best][col]):
            best = r
    return best


def _echelon(matrix: Sequence[Sequence[Coefficient]], rhs: Sequence[Coefficient] | None):
    rows: Matrix = [
        list(row) + ([rhs[i]] if rhs is not None else []) for i, row in enumerate(matrix)
    ]
    n = len(rows)
    sign = 1
    pivots: list[Coefficient] = []
    for col in range(n):
        p = _pivot(rows, col, col)
        if p is None:
            raise SingularJacobian(f"no usable pivot in column {col + 1}")
        if p != col:
            rows[col], rows[p] = rows[p], rows[col]
            sign = -sign
        pivot = rows[col][col]
        pivots.append(pivot)
        for r in range(col + 1, n):
            if vanishes(rows[r][col]):
                continue
            factor = rows[r][col] / pivot
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return rows, pivots, sign


def determinant(matrix: Sequence[Sequence[Coefficient]]) -> Coefficient:
    """Determinant of a square matrix; raises SingularJacobian when no pivot is available."""
    if not matrix:
        raise SingularJacobian("empty matrix")
    _, pivots, sign = _echelon(matrix, None)
    det: Coefficient = pivots[0] * sign
    for pivot in pivots[1:]:
        det = det * pivot
    return det


def solve(
    matrix: Sequence[Sequence[Coefficient]], rhs: Sequence[Coefficient]
) -> list[Coefficient]:
    """The solution y of ``matrix · y = rhs``."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix) or len(rhs) != n:
        raise SingularJacobian("linear system is not square")
    rows, pivots, _ = _echelon(matrix, rhs)
    out: list[Coefficient] = [rows[i][n] for i in range(n)]
    for i in range(n - 1, -1, -1):
        acc = rows[i][n]
        for j in range(i + 1, n):
            acc = acc - rows[i][j] * out[j]
        out[i] = acc / pivots[i]
    return out
