"""Igusa local zeta functions for monomial data over p-adic fields.

Modules
-------
lattice
    Newton polyhedra: facets, faces, first meet loci.
fan
    Simple cone subdivisions of the positive orthant subordinated to a
    Newton polyhedron.
ratfn
    Exact rational functions of ``t = q^{-s}`` with factored denominators.
zeta
    Monomial integrals, ball/chart assembly, candidate poles, monomial
    algebraic sets.
oracle
    Solution counts mod ``p^j`` and the Poincare-series cross-check.
cli
    JSON job runner.
"""
from .ratfn import ZetaFunction, normalize, real_poles, series
from .lattice import newton_polyhedron
from .fan import subdivision_subordinated
from .zeta import (
    ChartDatum,
    MonomialAlgebraicSet,
    MonomialIntegralSpec,
    NumericalDatum,
    assemble_zeta,
    candidate_poles,
    monomial_integral,
    monomial_set_zeta,
    shifted_ball_integral,
)
from .oracle import PolyMap, count_solutions, verify

__all__ = [
    "ZetaFunction",
    "normalize",
    "real_poles",
    "series",
    "newton_polyhedron",
    "subdivision_subordinated",
    "ChartDatum",
    "MonomialAlgebraicSet",
    "MonomialIntegralSpec",
    "NumericalDatum",
    "assemble_zeta",
    "candidate_poles",
    "monomial_integral",
    "monomial_set_zeta",
    "shifted_ball_integral",
    "PolyMap",
    "count_solutions",
    "verify",
]
