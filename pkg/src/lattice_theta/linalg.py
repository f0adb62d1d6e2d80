"""Exact solution of rational linear systems by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class InconsistentSystem(ValueError):
    """The right-hand side is not in the column span of the matrix."""


class SingularSystem(ValueError):
    """The matrix does not have full column rank, so the solution is not unique."""


def _integer_rows(matrix: Sequence[Sequence], rhs: Sequence) -> list[list[int]]:
    rows = []
    for row, b in zip(matrix, rhs):
        entries = [Fraction(x) for x in row] + [Fraction(b)]
        den = lcm(*(e.denominator for e in entries))
        rows.append([int(e * den) for e in entries])
    return rows


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly for an m x n system with m >= n.

    Every equation is scaled to integers, then reduced with Bareiss' one-step
    fraction-free elimination, so intermediate entries stay integral and
    divisions are exact. Over-determined systems must be consistent.
    """
    m = len(matrix)
    if m != len(rhs):
        raise ValueError("matrix and right-hand side disagree in length")
    n = len(matrix[0]) if m else 0
    a = _integer_rows(matrix, rhs)
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            raise SingularSystem(f"column {c} has no pivot")
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            for j in range(c + 1, n + 1):
                a[i][j] = (piv * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if a[i][n] != 0:
            raise InconsistentSystem(f"equation {i} is not satisfied by any solution")
    x = [Fraction(0)] * n
    for i in reversed(range(r)):
        c = pivots[i]
        s = Fraction(a[i][n]) - sum(a[i][j] * x[j] for j in range(c + 1, n))
        x[c] = s / a[i][c]
    return x
