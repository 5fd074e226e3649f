"""Newton polyhedra of finite subsets of N^n.

``Gamma(S)`` is the convex hull of the union of the orthants ``m + R_+^n``
for ``m`` in ``S``.  Facets are found by double description on the cone of
valid inequalities ``<a, x> >= b`` and everything is kept in exact integer
arithmetic, since facet offsets end up as pole locations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ._linalg import Vector, dot, primitive, rank

__all__ = [
    "Facet",
    "Face",
    "NewtonPolyhedron",
    "newton_polyhedron",
    "m_value",
    "first_meet_locus",
    "face_lattice",
    "is_interior",
    "face_dimension",
]


@dataclass(frozen=True, order=True)
class Facet:
    """Supporting inequality ``<normal, x> >= offset``."""

    normal: Vector
    offset: int


@dataclass(frozen=True)
class Face:
    """A face of a Newton polyhedron.

    A face is ``conv(generators_on_face) + cone(e_j : j in directions)``;
    that incidence pair identifies it.  ``active_facets`` holds indices
    into ``polyhedron.facets`` and is empty only for the improper face.
    """

    generators_on_face: frozenset[Vector]
    directions: frozenset[int]
    active_facets: frozenset[int] = field(compare=False)
    dimension: int = field(compare=False)
    polyhedron: "NewtonPolyhedron" = field(compare=False, repr=False)

    @property
    def is_proper(self) -> bool:
        return bool(self.active_facets)

    def sort_key(self) -> tuple:
        return (self.dimension, sorted(self.generators_on_face), sorted(self.directions))


@dataclass(frozen=True)
class NewtonPolyhedron:
    dimension: int
    generators: tuple[Vector, ...]
    facets: tuple[Facet, ...]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(_enumerate_faces(self))

    @cached_property
    def vertices(self) -> tuple[Vector, ...]:
        return tuple(sorted(next(iter(f.generators_on_face)) for f in self.faces if f.dimension == 0))

    @property
    def normals(self) -> tuple[Vector, ...]:
        return tuple(f.normal for f in self.facets)

    def improper_face(self) -> Face:
        return Face(
            frozenset(self.generators),
            frozenset(range(self.dimension)),
            frozenset(),
            self.dimension,
            self,
        )

    def contains(self, x: Sequence) -> bool:
        """Membership of a (rational) point, decided from the facets alone."""
        return all(dot(f.normal, x) >= f.offset for f in self.facets)

    def __repr__(self) -> str:
        return f"NewtonPolyhedron(n={self.dimension}, facets={list(self.facets)})"


def _check_generators(S: Iterable[Sequence[int]], n: int | None) -> tuple[tuple[Vector, ...], int]:
    gens = sorted({tuple(int(x) for x in m) for m in S})
    if not gens:
        raise ValueError("empty generator set")
    dims = {len(m) for m in gens}
    if len(dims) != 1:
        raise ValueError(f"mixed dimensions in generator set: {sorted(dims)}")
    d = dims.pop()
    if n is not None and d != n:
        raise ValueError(f"generators have dimension {d}, expected {n}")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if any(x < 0 for m in gens for x in m):
        raise ValueError("exponent vectors must be nonnegative")
    return tuple(gens), d


def _double_description(gens: tuple[Vector, ...], n: int) -> list[Vector]:
    # Cone of valid inequalities in z = (a, beta): <a, m> + beta >= 0 for
    # every generator m, and a_j >= 0.  Facets of Gamma(S) are its extreme
    # rays with a != 0 (the ray (0, ..., 0, 1) is the trivial inequality).
    d = n + 1
    rows: list[Vector] = [tuple(1 if i == j else 0 for i in range(d)) for j in range(n)]
    rows += [tuple(m) + (1,) for m in gens]

    m0 = gens[0]
    # inverse of the seed block [[I, 0], [m0, 1]] is [[I, 0], [-m0, 1]]
    rays: list[Vector] = [tuple(1 if i == j else 0 for i in range(n)) + (-m0[j],) for j in range(n)]
    rays.append((0,) * n + (1,))
    processed = list(range(n + 1))
    zero_sets = [frozenset(k for k in processed if dot(rows[k], r) == 0) for r in rays]

    for k in range(n + 1, len(rows)):
        h = rows[k]
        vals = [dot(h, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            processed.append(k)
            zero_sets = [z | {k} if vals[i] == 0 else z for i, z in enumerate(zero_sets)]
            continue
        new_rays = [rays[i] for i in pos + zer]
        new_zero = [zero_sets[i] | ({k} if vals[i] == 0 else set()) for i in pos + zer]
        for i in pos:
            for j in neg:
                common = zero_sets[i] & zero_sets[j]
                if len(common) < d - 2:
                    continue
                if any(
                    t != i and t != j and common <= zero_sets[t] for t in range(len(rays))
                ):
                    continue
                r = tuple(vals[i] * b - vals[j] * a for a, b in zip(rays[i], rays[j]))
                r = primitive(r)
                new_rays.append(r)
                new_zero.append(common | {k})
        rays, zero_sets = new_rays, new_zero
        processed.append(k)
    return rays


def newton_polyhedron(S: Iterable[Sequence[int]], n: int | None = None) -> NewtonPolyhedron:
    """Facet description of ``conv(union of m + R_+^n)``.

    >>> newton_polyhedron([(2, 0), (0, 2)]).facets[0]
    Facet(normal=(0, 1), offset=0)
    """
    gens, n = _check_generators(S, n)
    normals = set()
    for r in _double_description(gens, n):
        a = r[:n]
        if any(a):
            normals.add(primitive(a))
    facets = sorted(Facet(a, min(dot(a, m) for m in gens)) for a in normals)
    return NewtonPolyhedron(n, gens, tuple(facets))


def m_value(P: NewtonPolyhedron, a: Sequence[int]) -> int:
    """``inf <a, x>`` over ``Gamma(S)``; attained at a generator."""
    if len(a) != P.dimension:
        raise ValueError("dimension mismatch")
    if any(x < 0 for x in a):
        raise ValueError("unbounded direction: functional has a negative entry")
    return min(dot(a, m) for m in P.generators)


def face_dimension(points: Iterable[Vector], directions: Iterable[int], n: int) -> int:
    """Affine dimension of ``conv(points) + cone(e_j : j in directions)``."""
    pts = list(points)
    base = pts[0]
    vecs = [tuple(x - y for x, y in zip(m, base)) for m in pts[1:]]
    vecs += [tuple(1 if i == j else 0 for i in range(n)) for j in directions]
    return rank(vecs) if vecs else 0


def _facet_incidence(P: NewtonPolyhedron, f: Facet) -> tuple[frozenset, frozenset]:
    pts = frozenset(m for m in P.generators if dot(f.normal, m) == f.offset)
    dirs = frozenset(j for j, x in enumerate(f.normal) if x == 0)
    return pts, dirs


def _make_face(P: NewtonPolyhedron, pts: frozenset, dirs: frozenset) -> Face:
    active = frozenset(
        i
        for i, (fp, fd) in enumerate(_incidences(P))
        if pts <= fp and dirs <= fd
    )
    return Face(pts, dirs, active, face_dimension(pts, dirs, P.dimension), P)


def _incidences(P: NewtonPolyhedron) -> list[tuple[frozenset, frozenset]]:
    cached = P.__dict__.get("_incidences")
    if cached is None:
        cached = [_facet_incidence(P, f) for f in P.facets]
        P.__dict__["_incidences"] = cached
    return cached


def _enumerate_faces(P: NewtonPolyhedron) -> list[Face]:
    inc = _incidences(P)
    seen: dict[tuple[frozenset, frozenset], None] = {}
    frontier = list(dict.fromkeys(inc))
    for key in frontier:
        seen[key] = None
    while frontier:
        nxt = []
        for pts, dirs in frontier:
            for fp, fd in inc:
                p2, d2 = pts & fp, dirs & fd
                if not p2 or (p2, d2) in seen:
                    continue
                seen[(p2, d2)] = None
                nxt.append((p2, d2))
        frontier = nxt
    faces = [_make_face(P, pts, dirs) for pts, dirs in seen]
    faces.sort(key=Face.sort_key)
    return faces


def first_meet_locus(P: NewtonPolyhedron, a: Sequence[int]) -> Face:
    """The face of ``Gamma(S)`` on which ``<a, .>`` attains ``m(a)``."""
    if not any(a):
        raise ValueError("F(0) is the whole polyhedron; use improper_face()")
    ma = m_value(P, a)
    pts = frozenset(m for m in P.generators if dot(a, m) == ma)
    dirs = frozenset(j for j, x in enumerate(a) if x == 0)
    return _make_face(P, pts, dirs)


def face_lattice(P: NewtonPolyhedron) -> list[Face]:
    """All proper faces, facets down to vertices, without duplicates."""
    return list(P.faces)


def is_interior(P: NewtonPolyhedron, m: Sequence[int]) -> bool:
    if len(m) != P.dimension:
        raise ValueError("dimension mismatch")
    return all(dot(f.normal, m) > f.offset for f in P.facets)
