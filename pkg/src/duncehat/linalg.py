"""Exact linear algebra over the rationals (ranks and congruence diagonalization)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int | Fraction]]


def _as_fractions(m: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def rank(m: Matrix) -> int:
    """Rank of a (possibly empty or ragged-free) rational matrix by Gaussian elimination."""
    rows = _as_fractions(m)
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                f /= p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def congruence_diagonal(m: Matrix) -> list[Fraction]:
    """Diagonal entries of D with D = P^T M P for some invertible rational P.

    Symmetric row/column elimination. When every remaining diagonal entry is
    zero but some off-diagonal entry a_ij is not, row/column j is added to i,
    which puts 2*a_ij on the diagonal.
    """
    if not is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    a = _as_fractions(m)
    n = len(a)
    diag: list[Fraction] = []
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if pair is None:
                diag.extend(Fraction(0) for _ in range(k, n))
                break
            i, j = pair
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f /= p
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
                for t in range(k, n):
                    a[t][i] = a[i][t]
        diag.append(p)
        k += 1
    return diag


def inertia(m: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of the signature of a symmetric matrix."""
    d = congruence_diagonal(m)
    return (sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))
