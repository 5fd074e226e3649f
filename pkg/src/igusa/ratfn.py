"""Exact rational functions of ``t = q^{-s}`` with geometric denominators.

A :class:`ZetaFunction` is ``numerator(t) / prod (1 - q^{-sigma} t^m)`` for
a fixed integer ``q >= 2``.  Denominators stay factored, so poles are read
off structurally; polynomials only get expanded for exact-division tests
and series expansion.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "Poly",
    "GeomFactor",
    "ZetaFunction",
    "SeriesTruncation",
    "Pole",
    "geometric_term",
    "constant",
    "monomial",
    "add",
    "mul",
    "scale",
    "normalize",
    "is_normalized",
    "series",
    "real_poles",
    "same_value",
]

Rat = Fraction | int


class Poly:
    """Sparse univariate polynomial with rational coefficients (immutable)."""

    __slots__ = ("_c", "_key")

    def __init__(self, coeffs: Mapping[int, Rat] | None = None):
        c: dict[int, Fraction] = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative degree")
            v = Fraction(v)
            if v:
                c[int(k)] = v
        self._c = c
        self._key = tuple(sorted(c.items()))

    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._c = {k: v for k, v in c.items() if v}
        p._key = tuple(sorted(p._c.items()))
        return p

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._key

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Poly({dict(self._key)})"

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def __add__(self, other: "Poly") -> "Poly":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return Poly._raw(c)

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        c: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return Poly._raw(c)

    def scale(self, r: Rat) -> "Poly":
        r = Fraction(r)
        return Poly._raw({k: v * r for k, v in self._c.items()})

    def shift(self, k: int) -> "Poly":
        return Poly._raw({d + k: v for d, v in self._c.items()})

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self._c)
        dd = d.degree
        lead = d[dd]
        quo: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top < dd:
                break
            f = rem[top] / lead
            quo[top - dd] = f
            for k, v in d._c.items():
                key = top - dd + k
                nv = rem.get(key, 0) - f * v
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        return Poly._raw(quo), Poly._raw(rem)

    def exact_div(self, d: "Poly") -> "Poly | None":
        q, r = self.divmod(d)
        return None if r else q


class GeomFactor(NamedTuple):
    """The factor ``1 - q^{-sigma} t^m``."""

    sigma: int
    m: int

    def poly(self, q: int) -> Poly:
        return Poly({0: 1, self.m: -Fraction(1, q**self.sigma)}) if self.m else Poly(
            {0: 1 - Fraction(1, q**self.sigma)}
        )


class Pole(NamedTuple):
    """Poles ``realpart + 2 pi i k / (period log q)`` for all integers ``k``."""

    realpart: Fraction
    period: int


@dataclass(frozen=True)
class SeriesTruncation:
    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.order + 1:
            raise ValueError("need order + 1 coefficients")


@dataclass(frozen=True)
class ZetaFunction:
    q: int
    numerator: Poly
    den_factors: tuple[GeomFactor, ...] = ()

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be at least 2")
        num = self.numerator
        facs = []
        for f in self.den_factors:
            f = GeomFactor(int(f[0]), int(f[1]))
            if f.sigma < 0 or f.m < 0 or f == (0, 0):
                raise ValueError(f"invalid denominator factor {tuple(f)}")
            if f.m == 0:
                # a nonzero scalar; fold it into the numerator
                num = num.scale(1 / (1 - Fraction(1, self.q**f.sigma)))
            else:
                facs.append(f)
        object.__setattr__(self, "numerator", num if num else Poly())
        object.__setattr__(self, "den_factors", tuple(sorted(facs)) if num else ())

    def __add__(self, other: "ZetaFunction") -> "ZetaFunction":
        return add(self, other)

    def __mul__(self, other: "ZetaFunction") -> "ZetaFunction":
        return mul(self, other)

    def is_zero(self) -> bool:
        return not self.numerator

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "num": [[k, str(v)] for k, v in self.numerator.items()],
            "den": [[f.sigma, f.m] for f in self.den_factors],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "ZetaFunction":
        num = Poly({int(k): Fraction(v) for k, v in d["num"]})
        return cls(int(d["q"]), num, tuple(GeomFactor(int(s), int(m)) for s, m in d["den"]))

    def text(self) -> str:
        """Plain-text form, e.g. ``(1 - 1/3*t) / ((1 - 1/9*t^2))``."""
        num = _poly_text(self.numerator)
        if not self.den_factors:
            return num
        den = "*".join(
            "(" + _poly_text(Poly({0: 1, f.m: -Fraction(1, self.q**f.sigma)}), paren=False) + ")"
            for f in self.den_factors
        )
        return f"{num} / ({den})"

    def latex(self) -> str:
        q = self.q
        num = _poly_latex(self.numerator, q)
        if not self.den_factors:
            return num
        den = " ".join(
            rf"\left(1 - {q}^{{{_exp_latex(f.sigma, f.m)}}}\right)" for f in self.den_factors
        )
        return rf"\frac{{{num}}}{{{den}}}"


def _term_text(c: Fraction, k: int) -> str:
    if k == 0:
        return str(c)
    tk = "t" if k == 1 else f"t^{k}"
    return tk if c == 1 else f"{c}*{tk}"


def _poly_text(p: Poly, paren: bool = True) -> str:
    items = p.items()
    if not items:
        return "0"
    parts = []
    for i, (k, c) in enumerate(items):
        if i == 0:
            parts.append(("-" if c < 0 else "") + _term_text(abs(c), k))
        else:
            parts.append((" - " if c < 0 else " + ") + _term_text(abs(c), k))
    s = "".join(parts)
    return f"({s})" if paren else s


def _exp_latex(sigma: int, m: int) -> str:
    ms = "s" if m == 1 else f"{m}s"
    if sigma == 0:
        return f"-{ms}"
    return f"-({sigma}+{ms})"


def _frac_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _poly_latex(p: Poly, q: int) -> str:
    items = p.items()
    if not items:
        return "0"
    out = []
    for i, (k, c) in enumerate(items):
        sign = "-" if c < 0 else ("+" if i else "")
        a = abs(c)
        if k == 0:
            body = _frac_latex(a)
        else:
            e = "-s" if k == 1 else f"-{k}s"
            body = (f"{q}^{{{e}}}" if a == 1 else rf"{_frac_latex(a)} \cdot {q}^{{{e}}}")
        out.append(f"{sign} {body}".strip() if i else f"{sign}{body}")
    return " ".join(out)


def constant(q: int, c: Rat) -> ZetaFunction:
    return ZetaFunction(q, Poly({0: c}))


def monomial(q: int, c: Rat, k: int) -> ZetaFunction:
    """``c t^k``."""
    return ZetaFunction(q, Poly({k: c}))


def geometric_term(q: int, sigma: int, m: int) -> ZetaFunction:
    """``sum_{y >= 1} (q^{-sigma} t^m)^y = q^{-sigma} t^m / (1 - q^{-sigma} t^m)``."""
    if sigma == 0 and m == 0:
        raise ValueError("divergent geometric series")
    if sigma < 0 or m < 0:
        raise ValueError("sigma and m must be nonnegative")
    c = Fraction(1, q**sigma)
    if m == 0:
        return constant(q, c / (1 - c))
    return ZetaFunction(q, Poly({m: c}), (GeomFactor(sigma, m),))


def _check_q(f: ZetaFunction, g: ZetaFunction) -> None:
    if f.q != g.q:
        raise ValueError(f"mismatched q: {f.q} != {g.q}")


def _expand(q: int, factors: Iterable[GeomFactor]) -> Poly:
    out = Poly({0: 1})
    for f in factors:
        out = out * f.poly(q)
    return out


def add(f: ZetaFunction, g: ZetaFunction) -> ZetaFunction:
    _check_q(f, g)
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    cf, cg = Counter(f.den_factors), Counter(g.den_factors)
    common = cf | cg
    num = f.numerator * _expand(f.q, (common - cf).elements()) + g.numerator * _expand(
        g.q, (common - cg).elements()
    )
    return ZetaFunction(f.q, num, tuple(common.elements()))


def mul(f: ZetaFunction, g: ZetaFunction) -> ZetaFunction:
    _check_q(f, g)
    return ZetaFunction(f.q, f.numerator * g.numerator, f.den_factors + g.den_factors)


def scale(f: ZetaFunction, c: Rat) -> ZetaFunction:
    return ZetaFunction(f.q, f.numerator.scale(c), f.den_factors)


def _divisors_desc(n: int) -> list[int]:
    return [d for d in range(n, 1, -1) if n % d == 0]


def normalize(f: ZetaFunction) -> ZetaFunction:
    """Cancel denominator factors against the numerator.

    First whole factors ``1 - q^{-sigma} t^m`` that divide the numerator are
    removed.  Then a factor with ``d | gcd(sigma, m)`` is shrunk to
    ``(sigma/d, m/d)`` when the numerator absorbs the cofactor
    ``1 + X + ... + X^{d-1}``, ``X = q^{-sigma/d} t^{m/d}``.  Both steps
    preserve the value.
    """
    if f.is_zero():
        return f
    q = f.q
    num = f.numerator
    den = list(f.den_factors)
    changed = True
    while changed:
        changed = False
        for fac in sorted(set(den), reverse=True):
            quo = num.exact_div(fac.poly(q))
            if quo is not None:
                num = quo
                den.remove(fac)
                changed = True
                break
        if changed:
            continue
        for fac in sorted(set(den), reverse=True):
            for d in _divisors_desc(gcd(fac.sigma, fac.m)):
                s, m = fac.sigma // d, fac.m // d
                x = Fraction(1, q**s)
                cof = Poly({m * k: x**k for k in range(d)})
                quo = num.exact_div(cof)
                if quo is not None:
                    num = quo
                    den.remove(fac)
                    den.append(GeomFactor(s, m))
                    changed = True
                    break
            if changed:
                break
    return ZetaFunction(q, num, tuple(den))


def is_normalized(f: ZetaFunction) -> bool:
    return normalize(f) == f


def series(f: ZetaFunction, T: int) -> SeriesTruncation:
    """Coefficients of ``t^0 .. t^T`` of the power-series expansion."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    s = [f.numerator[j] for j in range(T + 1)]
    for fac in f.den_factors:
        c = Fraction(1, f.q**fac.sigma)
        for j in range(fac.m, T + 1):
            s[j] += c * s[j - fac.m]
    return SeriesTruncation(T, tuple(s))


def real_poles(f: ZetaFunction) -> list[Pole]:
    """``(-sigma/m, m)`` for every surviving denominator factor."""
    if not is_normalized(f):
        raise ValueError("real_poles needs a normalized ZetaFunction")
    poles = {Pole(Fraction(-fac.sigma, fac.m), fac.m) for fac in f.den_factors}
    return sorted(poles, key=lambda p: (-p.realpart, p.period))


def same_value(f: ZetaFunction, g: ZetaFunction) -> bool:
    """Exact equality of values by cross-multiplication."""
    _check_q(f, g)
    return f.numerator * _expand(g.q, g.den_factors) == g.numerator * _expand(f.q, f.den_factors)
