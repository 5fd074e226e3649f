from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from igusa.ratfn import (
    GeomFactor,
    Pole,
    Poly,
    ZetaFunction,
    add,
    constant,
    geometric_term,
    is_normalized,
    mul,
    normalize,
    real_poles,
    same_value,
    scale,
    series,
)


def coeffs(f, T):
    return list(series(f, T).coefficients)


def Z(q, num, den=()):
    return ZetaFunction(q, Poly(num), tuple(GeomFactor(*d) for d in den))


def test_geometric_term_examples():
    assert coeffs(geometric_term(3, 1, 1), 3) == [0, Fr(1, 3), Fr(1, 9), Fr(1, 27)]
    g = geometric_term(3, 2, 1)
    assert g == Z(3, {1: Fr(1, 9)}, [(2, 1)])
    assert geometric_term(2, 1, 0) == constant(2, 1)
    with pytest.raises(ValueError, match="divergent geometric series"):
        geometric_term(2, 0, 0)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("sigma", range(0, 5))
@pytest.mark.parametrize("m", range(1, 5))
def test_geometric_series_coefficients(q, sigma, m):
    c = coeffs(geometric_term(q, sigma, m), 12)
    for j, x in enumerate(c):
        assert x == (Fr(1, q ** (sigma * (j // m))) if j % m == 0 and j >= m else 0)


def test_arithmetic_examples():
    a = Z(3, {0: 5}, [(1, 1)])
    assert add(a, constant(3, 0)) == a
    inv = mul(Z(3, {0: 1}, [(1, 1)]), Z(3, {0: 1, 1: Fr(-1, 3)}))
    assert normalize(inv) == constant(3, 1)
    s = add(Z(3, {0: 1}, [(1, 1)]), Z(3, {0: 1}, [(2, 1)]))
    assert s == Z(3, {0: 2, 1: Fr(-4, 9)}, [(1, 1), (2, 1)])
    with pytest.raises(ValueError, match="mismatched q"):
        add(constant(2, 1), constant(3, 1))


def test_normalize_examples():
    f = Z(5, {0: 1, 2: Fr(-1, 25)}, [(1, 1)])
    assert normalize(f) == Z(5, {0: 1, 1: Fr(1, 5)})
    g = Z(3, {0: Fr(2, 3)}, [(1, 2)])
    assert normalize(g) == g and is_normalized(g)
    h = Z(2, {0: 1, 1: Fr(-1, 2), 2: Fr(-1, 4), 3: Fr(1, 8)}, [(1, 1), (1, 1)])
    assert normalize(h) == Z(2, {0: 1, 1: Fr(1, 2)})


def test_series_examples():
    assert coeffs(Z(3, {0: Fr(2, 3)}, [(1, 1)]), 3) == [Fr(2, 3), Fr(2, 9), Fr(2, 27), Fr(2, 81)]
    assert coeffs(constant(7, 1), 4) == [1, 0, 0, 0, 0]
    assert coeffs(Z(2, {0: Fr(3, 4)}, [(2, 1)]), 2) == [Fr(3, 4), Fr(3, 16), Fr(3, 64)]


def test_real_poles_examples():
    assert real_poles(Z(3, {0: Fr(2, 3)}, [(1, 1)])) == [Pole(Fr(-1), 1)]
    assert real_poles(Z(3, {0: 1}, [(2, 1), (5, 6)])) == [Pole(Fr(-5, 6), 6), Pole(Fr(-2), 1)]
    assert real_poles(Z(3, {0: 1, 4: 2})) == []
    with pytest.raises(ValueError):
        real_poles(Z(5, {0: 1, 2: Fr(-1, 25)}, [(1, 1)]))


def test_canonical_text_and_json():
    f = Z(3, {0: 1, 1: Fr(-1, 3)}, [(2, 2)])
    assert f.text() == "(1 - 1/3*t) / ((1 - 1/9*t^2))"
    assert ZetaFunction.from_json(f.to_json()) == f
    assert f.to_json() == {"q": 3, "num": [[0, "1"], [1, "-1/3"]], "den": [[2, 2]]}


factors = st.lists(st.tuples(st.integers(0, 3), st.integers(1, 3)).filter(lambda t: t != (0, 0)), max_size=3)
polys = st.dictionaries(st.integers(0, 4), st.fractions(min_value=-4, max_value=4, max_denominator=5), max_size=4)
zetas = st.builds(lambda num, den: Z(3, num, den), polys, factors)


@settings(max_examples=60, deadline=None)
@given(zetas, zetas, zetas)
def test_ring_laws(f, g, h):
    T = 12
    assert coeffs(add(f, g), T) == coeffs(add(g, f), T)
    assert coeffs(mul(f, g), T) == coeffs(mul(g, f), T)
    assert coeffs(add(add(f, g), h), T) == coeffs(add(f, add(g, h)), T)
    assert coeffs(mul(mul(f, g), h), T) == coeffs(mul(f, mul(g, h)), T)
    assert coeffs(mul(f, add(g, h)), T) == coeffs(add(mul(f, g), mul(f, h)), T)
    assert same_value(add(f, g), add(g, f))


@settings(max_examples=80, deadline=None)
@given(zetas)
def test_normalize_preserves_value(f):
    nf = normalize(f)
    assert coeffs(nf, 12) == coeffs(f, 12)
    assert is_normalized(nf)
    assert normalize(nf) == nf


@settings(max_examples=40, deadline=None)
@given(zetas, st.integers(1, 3))
def test_poles_invariant_under_coprime_factor(f, c):
    f = normalize(f)
    # roots of 1 + c t + 5 t^2 have modulus 5^(-1/2), never a power of 3
    g = normalize(mul(f, Z(3, {0: 1, 1: c, 2: 5})))
    assert real_poles(g) == real_poles(f)


def test_scale_and_zero():
    f = Z(2, {0: 1}, [(1, 1)])
    assert scale(f, 0).is_zero()
    assert coeffs(scale(f, Fr(1, 2)), 2) == [Fr(1, 2), Fr(1, 4), Fr(1, 8)]
