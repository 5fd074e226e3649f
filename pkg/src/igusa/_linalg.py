"""Small exact linear algebra over the integers and rationals.

Everything here works on plain tuples/lists of ``int`` or ``Fraction``;
the matrices involved are at most a few dozen entries so there is no
point reaching for a numeric library (and floats are not allowed).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gcd_of_maximal_minors(gens: Sequence[Sequence[int]]) -> int:
    """gcd of all e x e minors of the e x n matrix whose rows are ``gens``.

    Zero means the rows are linearly dependent.
    """
    e = len(gens)
    n = len(gens[0])
    g = 0
    for cols in combinations(range(n), e):
        g = gcd(g, det([[row[c] for c in cols] for row in gens]))
        if g == 1:
            return 1
    return g


def solve_in_span(gens: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Coefficients ``y`` with ``sum(y_i * gens[i]) == target``.

    ``gens`` must be linearly independent.  Returns ``None`` when the
    target is outside their span.
    """
    e = len(gens)
    n = len(target)
    # augmented system: n equations, e unknowns
    m = [[Fraction(gens[i][j]) for i in range(e)] + [Fraction(target[j])] for j in range(n)]
    row = 0
    pivots = []
    for c in range(e):
        piv = next((i for i in range(row, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("generators are linearly dependent")
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][c]
        m[row] = [x / pv for x in m[row]]
        for i in range(n):
            if i != row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(c)
        row += 1
    for i in range(row, n):
        if m[i][e] != 0:
            return None
    return tuple(m[i][e] for i in range(e))


def det_frac(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    m = [list(r) for r in mat]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out
