"""Small exact linear-algebra helpers over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def det(matrix) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def rank(matrix) -> int:
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def minors(matrix, order: int):
    """Yield every ``order x order`` minor of ``matrix``."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    for rs in combinations(range(nrows), order):
        for cs in combinations(range(ncols), order):
            yield det([[matrix[r][c] for c in cs] for r in rs])


def lagrange_coefficients(points) -> list:
    """Coefficients (constant first) of the polynomial through ``(t, value)`` pairs."""
    points = [(Fraction(t), Fraction(v)) for t, v in points]
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (ti, vi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (tj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= tj * basis[d + 1]
            denom *= ti - tj
        for d, c in enumerate(basis):
            coeffs[d] += vi * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_univariate(coeffs, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc
