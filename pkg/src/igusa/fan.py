"""Simple polyhedral subdivisions of R_+^n subordinated to a Newton polyhedron.

The normal fan of ``Gamma(S)`` splits ``R_+^n \\ {0}`` into the relatively
open cones ``Delta_tau = {a : F(a) = tau}``.  Each of those is cut into
relatively open simplicial cones (placing triangulation on its own rays)
and then into simple cones by stellar subdivision.  The result is a list
of relatively open cones, each stored once, that partition the orthant.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ._linalg import Vector, det_frac, gcd_of_maximal_minors, primitive, rank, solve_in_span
from .lattice import Face, NewtonPolyhedron, face_lattice, first_meet_locus

__all__ = [
    "Cone",
    "Fan",
    "dual_cone_of_face",
    "simplicial_subdivide",
    "make_simple",
    "is_simple",
    "subdivision_subordinated",
    "classify",
]


@dataclass(frozen=True)
class Cone:
    """Relatively open cone ``{sum lambda_i a_i : lambda_i > 0}``."""

    generators: tuple[Vector, ...]
    face: Face | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(sorted(tuple(g) for g in self.generators))
        for g in gens:
            if any(x < 0 for x in g) or not any(g):
                raise ValueError(f"cone generator {g} is not a nonzero vector of N^n")
            if primitive(g) != g:
                raise ValueError(f"cone generator {g} is not primitive")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return rank(self.generators)

    @property
    def is_simplicial(self) -> bool:
        return self.dim == len(self.generators)

    def multiplicity(self) -> int:
        if not self.is_simplicial:
            raise ValueError("not simplicial")
        return gcd_of_maximal_minors(self.generators)

    def coordinates(self, k: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Coefficients of ``k`` in the generators if it lies in this open cone."""
        y = solve_in_span(self.generators, k)
        if y is None or any(c <= 0 for c in y):
            return None
        return y


@dataclass(frozen=True)
class Fan:
    polyhedron: NewtonPolyhedron
    cones: tuple[Cone, ...]
    seed: int = 0

    def by_face(self) -> dict[Face, list[Cone]]:
        out: dict[Face, list[Cone]] = {}
        for c in self.cones:
            out.setdefault(c.face, []).append(c)
        return out

    def rays(self) -> list[Vector]:
        return sorted({g for c in self.cones for g in c.generators})


def dual_cone_of_face(P: NewtonPolyhedron, tau: Face) -> Cone:
    """``Delta_tau``: spanned by the normals of the facets containing ``tau``."""
    if not tau.active_facets:
        raise ValueError("the improper face has Delta = {0}")
    return Cone(tuple(P.facets[i].normal for i in sorted(tau.active_facets)), tau)


def _ordered(gens: Sequence[Vector], seed: int) -> list[Vector]:
    out = sorted(gens)
    if seed:
        random.Random(f"{seed}:{out}").shuffle(out)
    return out


def _placing_triangulation(gens: list[Vector], d: int) -> list[frozenset[int]]:
    # Insert generators in order; each new one is coned over the boundary
    # walls it sees strictly from outside.
    basis: list[int] = []
    for i in range(len(gens)):
        if rank([gens[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
            if len(basis) == d:
                break
    coords = [solve_in_span([gens[j] for j in basis], g) for g in gens]

    def orient(idx: Sequence[int]) -> int:
        v = det_frac([coords[i] for i in idx])
        return (v > 0) - (v < 0)

    simplices = [frozenset(basis)]
    for i in range(len(gens)):
        if i in basis:
            continue
        added = []
        for wall, opp in _boundary_walls(simplices, d):
            w = sorted(wall)
            if orient(w + [opp]) * orient(w + [i]) < 0:
                added.append(wall | {i})
        if added:
            simplices.extend(added)
            continue
        # already inside: stellar subdivision of every simplex whose closed
        # cone contains the new generator
        starred = []
        for s in simplices:
            idx = sorted(s)
            lam = solve_in_span([coords[j] for j in idx], coords[i])
            if all(x >= 0 for x in lam):
                starred.extend((s - {v}) | {i} for v, x in zip(idx, lam) if x > 0)
            else:
                starred.append(s)
        simplices = starred
    return simplices


def _boundary_walls(simplices: list[frozenset[int]], d: int) -> list[tuple[frozenset[int], int]]:
    count: dict[frozenset[int], list[int]] = {}
    for s in simplices:
        for opp in s:
            count.setdefault(s - {opp}, []).append(opp)
    return [(w, opps[0]) for w, opps in count.items() if len(opps) == 1]


def simplicial_subdivide(c: Cone, seed: int = 0) -> list[Cone]:
    """Partition the open cone ``c`` into open simplicial cones.

    Only generators of ``c`` are used.  ``seed`` picks the insertion order
    (0 is lexicographic).
    """
    d = c.dim
    if len(c.generators) == d:
        return [c]
    gens = _ordered(c.generators, seed)
    simplices = _placing_triangulation(gens, d)
    walls = [w for w, _ in _boundary_walls(simplices, d)]
    cells: set[frozenset[int]] = set()
    for s in simplices:
        for r in range(1, d + 1):
            cells.update(frozenset(x) for x in combinations(sorted(s), r))
    interior = [cell for cell in cells if not any(cell <= w for w in walls)]
    out = [Cone(tuple(gens[i] for i in cell), c.face) for cell in interior]
    out.sort(key=lambda x: (len(x.generators), x.generators))
    return out


def is_simple(c: Cone) -> bool:
    """True iff the generators extend to a basis of Z^n."""
    g = gcd_of_maximal_minors(c.generators)
    if g == 0:
        raise ValueError("not simplicial")
    return g == 1


def _parallelepiped_points(gens: tuple[Vector, ...], mult: int) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Nonzero lattice points ``sum lambda_i a_i`` with ``0 <= lambda_i < 1``."""
    n = len(gens[0])
    pts = []
    for ks in product(range(mult), repeat=len(gens)):
        if not any(ks):
            continue
        acc = [sum(k * g[j] for k, g in zip(ks, gens)) for j in range(n)]
        if all(x % mult == 0 for x in acc):
            pts.append((tuple(x // mult for x in acc), tuple(Fraction(k, mult) for k in ks)))
    return pts


def make_simple(c: Cone, seed: int = 0) -> list[Cone]:
    """Partition an open simplicial cone into open simple cones.

    Stellar subdivision at a lattice point of the half-open fundamental
    parallelepiped; every new maximal cone has strictly smaller
    multiplicity, so the recursion terminates.
    """
    mult = gcd_of_maximal_minors(c.generators)
    if mult == 0:
        raise ValueError("not simplicial")
    if mult == 1:
        return [c]
    pts = [(w, lam) for w, lam in _parallelepiped_points(c.generators, mult) if primitive(w) == w]
    if seed:
        w, lam = random.Random(f"{seed}:{c.generators}").choice(sorted(pts))
    else:
        w, lam = min(pts, key=lambda p: (sum(p[0]), p[0]))
    gens = c.generators
    cells: set[tuple[Vector, ...]] = set()
    for i, li in enumerate(lam):
        if li == 0:
            continue
        new = gens[:i] + (w,) + gens[i + 1:]
        for r in range(1, len(new) + 1):
            for sub in combinations(new, r):
                if w in sub:
                    cells.add(sub)
    out: list[Cone] = []
    for cell in sorted(cells):
        y = solve_in_span(gens, [sum(col) for col in zip(*cell)])
        if y is not None and all(x > 0 for x in y):
            out.extend(make_simple(Cone(cell, c.face), seed))
    return out


def subdivision_subordinated(P: NewtonPolyhedron, seed: int = 0) -> Fan:
    """Simple cones ``Delta_{tau,i}`` partitioning ``R_+^n \\ {0}``."""
    seen: dict[tuple[Vector, ...], Cone] = {}
    for tau in face_lattice(P):
        for s in simplicial_subdivide(dual_cone_of_face(P, tau), seed):
            for u in make_simple(s, seed):
                seen.setdefault(u.generators, u)
    cones = sorted(seen.values(), key=lambda x: (len(x.generators), x.generators))
    return Fan(P, tuple(cones), seed)


def classify(F: Fan, k: Sequence[int]) -> tuple[Cone, tuple[int, ...]]:
    """The open cone containing ``k`` and ``k``'s coordinates in its generators."""
    k = tuple(k)
    if not any(k):
        raise ValueError("zero vector lies in no cone")
    if any(x < 0 for x in k):
        raise ValueError("k must lie in N^n")
    tau = first_meet_locus(F.polyhedron, k)
    for c in F.cones:
        if c.face != tau:
            continue
        y = c.coordinates(k)
        if y is not None:
            if all(x.denominator == 1 for x in y):
                return c, tuple(int(x) for x in y)
            return c, y  # pragma: no cover - every cone in a Fan is simple
    raise LookupError(f"{k} lies in no cone of the fan")
