"""Closed forms for p-adic monomial integrals and local zeta functions.

The integral of ``||(c_1 x^N_1, ..., c_l x^N_l)||^s |x^v|`` over a ball is
split into strata ``{v(x) = k}``, ``k`` running over the lattice points of
the simple cones of a fan subordinated to ``Gamma(N)``.  On each cone the
sum over ``k`` is a finite sum of bounded cells times geometric tails, which
gives an exact :class:`~igusa.ratfn.ZetaFunction` of ``t = q^{-s}``.
"""
from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from ._linalg import Vector, dot
from .fan import subdivision_subordinated
from .lattice import is_interior, m_value, newton_polyhedron
from .oracle import PolyMap, padic_valuation
from .ratfn import (
    GeomFactor,
    Pole,
    Poly,
    ZetaFunction,
    add,
    constant,
    geometric_term,
    monomial,
    mul,
    normalize,
    scale,
)

__all__ = [
    "MonomialIntegralSpec",
    "NumericalDatum",
    "ChartDatum",
    "MonomialAlgebraicSet",
    "CandidatePole",
    "NormConstancyWarning",
    "monomial_integral",
    "shifted_ball_integral",
    "assemble_zeta",
    "candidate_poles",
    "monomial_set_zeta",
    "validate_norm_constancy",
    "pole_contained",
]


class NormConstancyWarning(UserWarning):
    """The closed form for a perturbed monomial set was used unvalidated."""


def _vec(v: Iterable) -> Vector:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class MonomialIntegralSpec:
    """``int_{(P^e0)^n} ||(c_i x^{N_i})||^s |x^v| |dx|`` with ``v(c_i) = cval[i]``.

    ``v`` is the exponent of ``|x^v|`` itself (already shifted by one).
    """

    N: tuple[Vector, ...]
    v: Vector
    cval: tuple[int, ...] = ()
    e0: int = 0

    def __post_init__(self) -> None:
        N = tuple(_vec(x) for x in self.N)
        if not N:
            raise ValueError("need at least one component")
        n = len(N[0])
        if any(len(x) != n for x in N) or len(self.v) != n:
            raise ValueError("inconsistent dimensions")
        cval = _vec(self.cval) if self.cval else (0,) * len(N)
        if len(cval) != len(N):
            raise ValueError("cval needs one entry per component")
        if any(x < 0 for x in cval) or any(x < 0 for x in self.v) or self.e0 < 0:
            raise ValueError("valuations, weights and e0 must be nonnegative")
        if any(x < 0 for r in N for x in r):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "v", _vec(self.v))
        object.__setattr__(self, "cval", cval)

    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def l(self) -> int:
        return len(self.N)


@dataclass(frozen=True)
class NumericalDatum:
    """Numerical datum ``(N_b, v_b)`` of a resolution at a point ``b``."""

    N: tuple[Vector, ...]
    v: Vector

    def __post_init__(self) -> None:
        N = tuple(_vec(x) for x in self.N)
        if not N or any(not any(x) for x in N):
            raise ValueError("every N_i must be nonzero")
        if any(len(x) != len(self.v) for x in N):
            raise ValueError("inconsistent dimensions")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "v", _vec(self.v))


@dataclass(frozen=True)
class ChartDatum:
    """One piece ``w + pi^e0 O^n`` of a chart decomposition.

    Contributes ``phi_value * q^{-eta_val}`` times the monomial integral of
    ``spec`` over the ball centred at ``center``.
    """

    phi_value: Fraction
    eta_val: int
    spec: MonomialIntegralSpec
    center: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi_value", Fraction(self.phi_value))
        object.__setattr__(self, "center", _vec(self.center))
        if len(self.center) != self.spec.n:
            raise ValueError("center dimension does not match spec")
        if self.eta_val < 0:
            raise ValueError("eta_val must be nonnegative")


@dataclass(frozen=True)
class MonomialAlgebraicSet:
    """``f_i = c_i x^{N_i} + g_i`` with unit ``c_i``; only supports of ``g_i`` are kept."""

    N: tuple[Vector, ...]
    g_supports: tuple[frozenset[Vector], ...] = ()

    def __post_init__(self) -> None:
        N = tuple(_vec(x) for x in self.N)
        if not N or any(not any(x) for x in N):
            raise ValueError("every N_i must be nonzero")
        gs = tuple(frozenset(_vec(m) for m in s) for s in self.g_supports) or tuple(
            frozenset() for _ in N
        )
        if len(gs) != len(N):
            raise ValueError("need one g-support per component")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "g_supports", gs)

    @property
    def n(self) -> int:
        return len(self.N[0])

    @property
    def is_pure(self) -> bool:
        return not any(self.g_supports)

    def check(self) -> None:
        P = newton_polyhedron(self.N)
        for s in self.g_supports:
            for m in s:
                if not is_interior(P, m):
                    raise ValueError(
                        f"not a monomial algebraic set (condition 2): {m} is not interior"
                    )


@dataclass(frozen=True)
class CandidatePole:
    realpart: Fraction
    period: int
    source: tuple[int, Vector] = field(compare=False, default=(0, ()))

    @property
    def pole(self) -> Pole:
        return Pole(self.realpart, self.period)


def _cone_sums(
    N: Sequence[Vector], v: Vector, cval: Sequence[int], e0: int, q: int, seed: int
) -> ZetaFunction:
    """Sum over strata ``v(x) = k != 0`` with ``k >= e0``; ``N_i = 0`` allowed."""
    n = len(v)
    P = newton_polyhedron(N, n)
    F = subdivision_subordinated(P, seed)
    alpha0 = e0 + max(cval)
    grouped: dict[tuple[GeomFactor, ...], dict[int, Fraction]] = defaultdict(
        lambda: defaultdict(Fraction)
    )
    for cone in F.cones:
        A = cone.generators
        e = len(A)
        sig = [sum(a) + dot(v, a) for a in A]
        ms = [m_value(P, a) for a in A]
        dots = [[dot(a, Nj) for Nj in N] for a in A]
        for mask in range(1 << e):
            J = [i for i in range(e) if mask >> i & 1]
            free = [i for i in range(e) if not mask >> i & 1]
            flat = [j for j in range(len(N)) if all(dots[i][j] == ms[i] for i in J)]
            base = [sum((alpha0 + 1) * A[i][c] for i in J) for c in range(n)]
            den = tuple(sorted(GeomFactor(sig[i], ms[i]) for i in J))
            shift_t = sum((alpha0 + 1) * ms[i] for i in J)
            shift_q = sum((alpha0 + 1) * sig[i] for i in J)
            acc = grouped[den]
            for ys in product(range(1, alpha0 + 1), repeat=len(free)):
                k = list(base)
                for y, i in zip(ys, free):
                    for c in range(n):
                        k[c] += y * A[i][c]
                if any(x < e0 for x in k):
                    continue
                w = min(cval[j] + sum(y * dots[i][j] for y, i in zip(ys, free)) for j in flat)
                weight = sum(y * sig[i] for y, i in zip(ys, free))
                acc[w + shift_t] += Fraction(1, q ** (weight + shift_q))
    total = ZetaFunction(q, Poly())
    for den, coeffs in sorted(grouped.items()):
        if coeffs:
            total = add(total, ZetaFunction(q, Poly(coeffs), den))
    return total


def _integral(spec: MonomialIntegralSpec, q: int, seed: int) -> ZetaFunction:
    meas = (1 - Fraction(1, q)) ** spec.n
    out = _cone_sums(spec.N, spec.v, spec.cval, spec.e0, q, seed)
    if spec.e0 == 0:
        out = add(out, monomial(q, 1, min(spec.cval)))
    return scale(out, meas)


def monomial_integral(spec: MonomialIntegralSpec, q: int, seed: int = 0) -> ZetaFunction:
    """Exact ``I_(N,v)(s)`` as a normalized rational function of ``t``.

    >>> monomial_integral(MonomialIntegralSpec(((2,),), (0,)), 3).text()
    '(2/3) / ((1 - 1/3*t^2))'
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if any(not any(x) for x in spec.N):
        raise ValueError("norm never vanishes asymptotically: some N_i = 0")
    return normalize(_integral(spec, q, seed))


def shifted_ball_integral(chart: ChartDatum, q: int, p: int, seed: int = 0) -> ZetaFunction:
    """The monomial integral of ``chart.spec`` over ``center + pi^e0 O^n``.

    Coordinates whose centre is nonzero mod ``p^e0`` have constant absolute
    value on the ball and are absorbed into the constants; the rest form a
    monomial integral in fewer variables over ``(P^e0)^n'``.
    """
    spec = chart.spec
    e0 = spec.e0
    mod = p**e0
    zero_like: list[int] = []
    unit_val: dict[int, int] = {}
    for j, w in enumerate(chart.center):
        if w % mod == 0:
            zero_like.append(j)
        else:
            unit_val[j] = padic_valuation(w, p)
    const = Fraction(1)
    for j, vw in unit_val.items():
        const /= q ** (e0 + spec.v[j] * vw)
    cval = [c + sum(Nj[j] * vw for j, vw in unit_val.items()) for c, Nj in zip(spec.cval, spec.N)]
    if not zero_like:
        return monomial(q, const, min(cval))
    red = MonomialIntegralSpec(
        tuple(tuple(Nj[j] for j in zero_like) for Nj in spec.N),
        tuple(spec.v[j] for j in zero_like),
        tuple(cval),
        e0,
    )
    return normalize(scale(_integral(red, q, seed), const))


def assemble_zeta(charts: Sequence[ChartDatum], q: int, p: int, seed: int = 0) -> ZetaFunction:
    """``sum phi * |eta| * (ball integral)`` over a chart decomposition."""
    total = constant(q, 0)
    for ch in charts:
        term = shifted_ball_integral(ch, q, p, seed)
        total = add(total, scale(term, ch.phi_value / q**ch.eta_val))
    return normalize(total)


def candidate_poles(data: Sequence[NumericalDatum], q: int | None = None) -> list[CandidatePole]:
    """Real parts and periods ``-(sigma(a) + <v,a>)/m(a)`` over facets with ``m(a) != 0``.

    The list is the same for the twisted zeta function; ``q`` only fixes the
    imaginary spacing and is accepted for symmetry with the other entry points.
    """
    seen: dict[tuple[Fraction, int], CandidatePole] = {}
    for idx, d in enumerate(data):
        P = newton_polyhedron(d.N, len(d.v))
        for f in P.facets:
            if f.offset == 0:
                continue
            a = f.normal
            rp = Fraction(-(sum(a) + dot(d.v, a)), f.offset)
            seen.setdefault((rp, f.offset), CandidatePole(rp, f.offset, (idx, a)))
    return sorted(seen.values(), key=lambda c: (-c.realpart, c.period))


def pole_contained(pole: Pole, candidates: Iterable[CandidatePole]) -> bool:
    """A pole line lies inside a candidate line: same real part, period dividing."""
    return any(c.realpart == pole.realpart and c.period % pole.period == 0 for c in candidates)


def monomial_set_zeta(
    V: MonomialAlgebraicSet,
    q: int,
    formula: str = "corrected",
    seed: int = 0,
    validated: bool = False,
) -> ZetaFunction:
    """Closed-form ``Z(s, V)`` of a monomial algebraic set.

    ``formula="corrected"`` carries the measure factor ``(1 - q^-1)^n`` on
    every cone term; ``"literal"`` applies it to the constant term only,
    which is kept to exhibit the discrepancy against counting.
    """
    if formula not in ("corrected", "literal"):
        raise ValueError(f"unknown formula {formula!r}")
    V.check()
    if not V.is_pure and not validated:
        warnings.warn(
            "norm-constancy validator skipped for nonzero perturbations",
            NormConstancyWarning,
            stacklevel=2,
        )
    P = newton_polyhedron(V.N)
    F = subdivision_subordinated(P, seed)
    cone_sum = constant(q, 0)
    for cone in F.cones:
        term = constant(q, 1)
        for a in cone.generators:
            term = mul(term, geometric_term(q, sum(a), m_value(P, a)))
        cone_sum = add(cone_sum, term)
    meas = (1 - Fraction(1, q)) ** V.n
    if formula == "corrected":
        out = scale(add(constant(q, 1), cone_sum), meas)
    else:
        out = add(constant(q, meas), cone_sum)
    return normalize(out)


def validate_norm_constancy(f: PolyMap, N: Sequence[Sequence[int]], p: int, depth: int) -> Vector | None:
    """Check ``||f(x)|| = p^{-m(v(x))}`` over residues mod ``p^depth``.

    Only residues whose coordinate valuations and ``m(v(x))`` are below
    ``depth`` are decided at that precision.  Returns the first
    counterexample, or ``None`` when the check passes.
    """
    P = newton_polyhedron(N)
    mod = p**depth
    vals = [padic_valuation(r, p) if r else depth for r in range(mod)]
    for x in product(range(mod), repeat=f.n):
        k = tuple(vals[r] for r in x)
        if any(c >= depth for c in k):
            continue
        mk = m_value(P, k)
        if mk >= depth:
            continue
        got = min(
            padic_valuation(r, p) if r else depth for r in (fi % mod for fi in f.evaluate(x, mod))
        )
        if got != mk:
            return x
    return None
