"""Ground truth by counting: ``N_j(f)`` solutions of ``f = 0 mod p^j``.

Over ``K = Q_p`` the Poincare series ``P(t) = sum N_j (p^-n t)^j`` and the
zeta function satisfy ``P = (1 - t Z) / (1 - t)``, so counts give the
power-series coefficients of ``Z`` with no reference to resolutions, fans or
closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from . import kernels
from .ratfn import SeriesTruncation, ZetaFunction, series

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_MAX_DEPTH",
    "BudgetExceeded",
    "PolyMap",
    "CountTable",
    "VerifyReport",
    "padic_valuation",
    "count_table",
    "count_solutions",
    "count_naive",
    "max_depth_table",
    "poincare_truncated",
    "zeta_series_from_counts",
    "verify",
]

DEFAULT_BUDGET = 10**7
# cheap maps (e.g. f = x costs p evaluations per level) never hit the budget
DEFAULT_MAX_DEPTH = 30


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"lifting tree needs {needed} residue evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


def padic_valuation(a: int, p: int) -> int:
    if a == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


@dataclass(frozen=True)
class PolyMap:
    """``f = (f_1, ..., f_l)`` with integer coefficients, each a sparse term list."""

    n: int
    polys: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]

    def __post_init__(self) -> None:
        clean = []
        for terms in self.polys:
            acc: dict[tuple[int, ...], int] = {}
            for c, e in terms:
                e = tuple(int(x) for x in e)
                if len(e) != self.n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for n = {self.n}")
                acc[e] = acc.get(e, 0) + int(c)
            terms = tuple(sorted((c, e) for e, c in acc.items() if c))
            if not any(any(e) for _, e in terms):
                raise ValueError("every component must be a nonconstant polynomial")
            clean.append(terms)
        if not clean:
            raise ValueError("need at least one component")
        object.__setattr__(self, "polys", tuple(clean))

    @property
    def l(self) -> int:
        return len(self.polys)

    @classmethod
    def from_json(cls, polys: Sequence[Sequence[Mapping]], n: int | None = None) -> "PolyMap":
        parsed = [[(int(t["c"]), tuple(int(x) for x in t["e"])) for t in poly] for poly in polys]
        if n is None:
            n = len(parsed[0][0][1])
        return cls(n, tuple(tuple(p) for p in parsed))

    @classmethod
    def monomials(cls, N: Sequence[Sequence[int]]) -> "PolyMap":
        """``(x^N_1, ..., x^N_l)`` with unit coefficients."""
        return cls(len(N[0]), tuple(((1, tuple(Ni)),) for Ni in N))

    def to_json(self) -> list:
        return [[{"c": str(c), "e": list(e)} for c, e in poly] for poly in self.polys]

    def evaluate(self, x: Sequence[int], mod: int) -> list[int]:
        out = []
        for poly in self.polys:
            acc = 0
            for c, e in poly:
                term = c
                for xj, ej in zip(x, e):
                    if ej:
                        term = term * pow(xj, ej, mod) % mod
                acc += term
            out.append(acc % mod)
        return out

    def _flat(self):
        coefs, exps, owner = [], [], []
        for i, poly in enumerate(self.polys):
            for c, e in poly:
                coefs.append(c)
                exps.extend(e)
                owner.append(i)
        return coefs, exps, owner


@dataclass(frozen=True)
class CountTable:
    p: int
    n: int
    counts: tuple[int, ...]

    @property
    def jmax(self) -> int:
        return len(self.counts) - 1

    def measures(self) -> list[Fraction]:
        """``mu_j = N_j p^{-nj}``, the measure of ``{||f(x)|| <= p^-j}``."""
        return [Fraction(c, self.p ** (self.n * j)) for j, c in enumerate(self.counts)]

    def poincare(self) -> SeriesTruncation:
        return SeriesTruncation(self.jmax, tuple(self.measures()))


def _lift_levels(f: PolyMap, p: int, jmax: int | None, budget: int, strict: bool) -> CountTable:
    n = f.n
    coefs, exps, owner = f._flat()
    sols: Sequence[int] = [0] * n
    counts = [1]
    used = 0
    prev_mod = 1
    j = 0
    while jmax is None or j < jmax:
        step = (len(sols) // n) * p**n
        if used + step > budget:
            if strict:
                raise BudgetExceeded(used + step, budget)
            break
        used += step
        mod = prev_mod * p
        sols = kernels.lift_level(sols, n, coefs, exps, owner, f.l, p, prev_mod, mod)
        counts.append(len(sols) // n)
        prev_mod = mod
        j += 1
        if not sols:
            # nothing left to lift: all deeper counts are zero
            if jmax is not None:
                counts.extend([0] * (jmax - j))
            break
    return CountTable(p, n, tuple(counts))


def count_table(f: PolyMap, p: int, jmax: int, budget: int = DEFAULT_BUDGET) -> CountTable:
    """``N_0 .. N_jmax`` by tree lifting; raises :class:`BudgetExceeded`."""
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    return _lift_levels(f, p, jmax, budget, strict=True)


def max_depth_table(
    f: PolyMap, p: int, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_MAX_DEPTH
) -> CountTable:
    """Counts to the largest depth (at most ``cap``) whose lifting tree fits in ``budget``."""
    return _lift_levels(f, p, cap, budget, strict=False)


def count_solutions(f: PolyMap, p: int, j: int, budget: int = DEFAULT_BUDGET) -> int:
    if j < 1:
        raise ValueError("j must be at least 1")
    return count_table(f, p, j, budget).counts[j]


def count_naive(f: PolyMap, p: int, j: int) -> int:
    """Full enumeration of ``(Z/p^j)^n``; for cross-checking the lifting."""
    mod = p**j
    return sum(1 for x in product(range(mod), repeat=f.n) if not any(f.evaluate(x, mod)))


def poincare_truncated(f: PolyMap, p: int, jmax: int, budget: int = DEFAULT_BUDGET) -> SeriesTruncation:
    return count_table(f, p, jmax, budget).poincare()


def zeta_series_from_counts(P: SeriesTruncation) -> SeriesTruncation:
    """Invert ``P = (1 - t Z)/(1 - t)`` as ``Z = (1 - (1 - t) P) / t``."""
    if P.order < 1:
        raise ValueError("need the Poincare series to order at least 1")
    c = P.coefficients
    one_minus_t_P = [c[0]] + [c[j] - c[j - 1] for j in range(1, P.order + 1)]
    numer = [(1 if j == 0 else 0) - x for j, x in enumerate(one_minus_t_P)]
    if numer[0] != 0:
        raise ValueError("P(0) must be 1")
    return SeriesTruncation(P.order - 1, tuple(numer[1:]))


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    order: int
    engine: tuple[Fraction, ...]
    oracle: tuple[Fraction, ...]
    first_mismatch: int | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        out = {"verdict": self.status, "order": self.order}
        if self.first_mismatch is not None:
            i = self.first_mismatch
            out["first_mismatch"] = {
                "index": i,
                "engine": str(self.engine[i]),
                "oracle": str(self.oracle[i]),
            }
        return out


def verify(
    engine_Z: ZetaFunction,
    f: PolyMap,
    p: int,
    jmax: int | None = None,
    budget: int = DEFAULT_BUDGET,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> VerifyReport:
    """Compare engine series with counts, coefficient by coefficient, exactly.

    With ``jmax=None`` the deepest level within ``budget`` (and at most
    ``max_depth``) is used.
    """
    if engine_Z.q != p:
        raise ValueError(f"engine q = {engine_Z.q} but counting is over Q_{p}")
    table = (
        count_table(f, p, jmax, budget)
        if jmax is not None
        else max_depth_table(f, p, budget, max_depth)
    )
    oracle = zeta_series_from_counts(table.poincare())
    engine = series(engine_Z, oracle.order)
    mismatch = next(
        (i for i, (a, b) in enumerate(zip(engine.coefficients, oracle.coefficients)) if a != b),
        None,
    )
    return VerifyReport(mismatch is None, oracle.order, engine.coefficients, oracle.coefficients, mismatch)
