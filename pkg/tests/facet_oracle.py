"""Brute-force facets of a Newton polyhedron, independent of the library.

A candidate normal ``a`` is kept when its argmin face has dimension
``n - 1``: the rank of the argmin differences together with the coordinate
directions ``e_j`` having ``a_j = 0``.
"""
from itertools import product
from math import gcd


def int_rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f, g = rows[i][c], pr[c]
                rows[i] = [g * x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
    return rank


def argmin_face_dim(S, a):
    n = len(a)
    vals = [sum(x * y for x, y in zip(a, s)) for s in S]
    m = min(vals)
    on = [s for s, v in zip(S, vals) if v == m]
    diffs = [tuple(x - y for x, y in zip(s, on[0])) for s in on[1:]]
    dirs = [tuple(int(i == j) for i in range(n)) for j in range(n) if a[j] == 0]
    return int_rank(diffs + dirs) if diffs or dirs else 0, m


def brute_facets(S, bound=None):
    S = [tuple(s) for s in S]
    n = len(S[0])
    if bound is None:
        bound = n * max(max(s) for s in S) + 1
    out = set()
    for a in product(range(bound + 1), repeat=n):
        if not any(a):
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        if g != 1:
            continue
        d, m = argmin_face_dim(S, a)
        if d == n - 1:
            out.add((a, m))
    return out, bound
