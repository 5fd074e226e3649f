import warnings
from fractions import Fraction as Fr
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CATALOG
from igusa.oracle import PolyMap, verify
from igusa.ratfn import GeomFactor, Poly, ZetaFunction, constant, normalize, real_poles
from igusa.zeta import (
    ChartDatum,
    MonomialAlgebraicSet,
    MonomialIntegralSpec,
    NormConstancyWarning,
    NumericalDatum,
    assemble_zeta,
    candidate_poles,
    monomial_integral,
    monomial_set_zeta,
    pole_contained,
    shifted_ball_integral,
    validate_norm_constancy,
)


def Z(q, num, den=()):
    return ZetaFunction(q, Poly(num), tuple(GeomFactor(*d) for d in den))


def spec(N, v=None, cval=(), e0=0):
    n = len(N[0])
    return MonomialIntegralSpec(tuple(N), tuple(v or (0,) * n), tuple(cval), e0)


def test_integral_examples():
    assert monomial_integral(spec([(2,)]), 3) == Z(3, {0: Fr(2, 3)}, [(1, 2)])
    for q in (2, 3, 5):
        u = 1 - Fr(1, q)
        got = monomial_integral(spec([(2,)], (1,), e0=1), q)
        assert got == normalize(Z(q, {2: u / q**2}, [(2, 2)]))
        got = monomial_integral(spec([(1, 0), (0, 1)]), q)
        assert got == Z(q, {0: 1 - Fr(1, q**2)}, [(2, 1)])
        got = monomial_integral(spec([(2, 3)]), q)
        assert got == Z(q, {0: u * u}, [(1, 2), (1, 3)])
    with pytest.raises(ValueError, match="norm never vanishes"):
        monomial_integral(spec([(0, 0), (1, 0)]), 3)


def test_shifted_ball_examples():
    one = ChartDatum(1, 0, spec([(1,)], e0=1), (1,))
    assert shifted_ball_integral(one, 3, 3) == constant(3, Fr(1, 3))
    ball = ChartDatum(1, 0, spec([(2,)], e0=1), (0,))
    assert shifted_ball_integral(ball, 3, 3) == Z(3, {2: Fr(2, 9)}, [(1, 2)])
    mixed = ChartDatum(1, 0, spec([(1, 1)], e0=1), (1, 0))
    assert shifted_ball_integral(mixed, 3, 3) == Z(3, {1: Fr(1, 3) * Fr(2, 9)}, [(1, 1)])


def test_shifted_ball_nonunit_center():
    # center 3 mod 9: |x| = 1/3 on the whole ball 3 + 9O
    ch = ChartDatum(1, 0, spec([(1,)], (1,), e0=2), (3,))
    assert shifted_ball_integral(ch, 3, 3) == constant(3, Fr(1, 9) * Fr(1, 3)) * Z(3, {1: 1})


def test_assemble_examples():
    for q in (2, 3, 5):
        u = 1 - Fr(1, q)
        single = assemble_zeta([ChartDatum(1, 0, spec([(1,)]), (0,))], q, q)
        assert single == Z(q, {0: u}, [(1, 1)])
        charts = [ChartDatum(1, 0, spec([(2,)], e0=1), (w,)) for w in range(q)]
        assert assemble_zeta(charts, q, q) == Z(q, {0: u}, [(1, 2)])
    assert assemble_zeta([], 3, 3).is_zero()


def test_assemble_weights():
    ch = ChartDatum(Fr(5, 2), 2, spec([(1,)]), (0,))
    assert assemble_zeta([ch], 3, 3) == Z(3, {0: Fr(5, 2) * Fr(1, 9) * Fr(2, 3)}, [(1, 1)])


def test_candidate_examples():
    cs = candidate_poles([NumericalDatum(((1, 0), (0, 1)), (0, 0))], 3)
    assert [(c.realpart, c.period) for c in cs] == [(Fr(-2), 1)]
    cs = candidate_poles([NumericalDatum(((2, 0), (0, 2)), (1, 1))], 3)
    assert [(c.realpart, c.period) for c in cs] == [(Fr(-2), 2)]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any),
    st.lists(st.integers(1, 6), min_size=n, max_size=n),
)))
def test_candidates_classical(data):
    N, vb = data
    cs = candidate_poles([NumericalDatum((tuple(N),), tuple(x - 1 for x in vb))])
    expected = {(Fr(-vj, Nj), Nj) for Nj, vj in zip(N, vb) if Nj}
    assert {(c.realpart, c.period) for c in cs} == expected


def test_monomial_set_examples():
    for q in (2, 3, 5):
        u = 1 - Fr(1, q)
        assert monomial_set_zeta(MonomialAlgebraicSet(((1,),)), q) == Z(q, {0: u}, [(1, 1)])
        lit = monomial_set_zeta(MonomialAlgebraicSet(((1,),)), q, formula="literal")
        assert lit == normalize(Z(q, {0: u}) + Z(q, {1: Fr(1, q)}, [(1, 1)]))
        assert lit != Z(q, {0: u}, [(1, 1)])
        V = MonomialAlgebraicSet(((1, 0), (0, 1)))
        assert monomial_set_zeta(V, q) == Z(q, {0: 1 - Fr(1, q**2)}, [(2, 1)])
        V = MonomialAlgebraicSet(((1, 1),))
        assert monomial_set_zeta(V, q) == Z(q, {0: u * u}, [(1, 1), (1, 1)])
    with pytest.raises(ValueError, match="condition 2"):
        MonomialAlgebraicSet(((1, 1),), (frozenset({(1, 2)}),)).check()


@pytest.mark.parametrize("name", list(CATALOG))
def test_set_zeta_equals_integral(name):
    N = CATALOG[name]
    for q in (2, 3, 5):
        assert monomial_set_zeta(MonomialAlgebraicSet(tuple(N)), q) == monomial_integral(spec(N), q)


@pytest.mark.parametrize("name", list(CATALOG))
@pytest.mark.parametrize("seed", [1, 4, 9])
def test_seed_independence(name, seed):
    N = CATALOG[name]
    assert monomial_integral(spec(N), 3, seed) == monomial_integral(spec(N), 3, 0)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(0, 4), min_size=2, max_size=3).filter(any),
    st.lists(st.integers(0, 2), min_size=3, max_size=3),
    st.sampled_from([2, 3, 5]),
)
def test_separability(N, v, q):
    n = len(N)
    v = v[:n]
    got = monomial_integral(spec([tuple(N)], tuple(v)), q)
    # product over coordinates of int_O |x|^{N_j s + v_j} dx
    expect = constant(q, 1)
    for Nj, vj in zip(N, v):
        if Nj:
            one = Z(q, {0: 1 - Fr(1, q)}, [(vj + 1, Nj)])
        else:
            one = constant(q, (1 - Fr(1, q)) / (1 - Fr(1, q ** (vj + 1))))
        expect = expect * one
    assert got == normalize(expect)


@pytest.mark.parametrize(
    "N, v, cval, e0",
    [
        ([(2, 1, 0), (0, 1, 3)], (1, 0, 0), (0, 1), 0),
        ([(1, 2, 0), (3, 0, 1)], (0, 1, 2), (1, 0), 1),
        ([(1, 1, 1)], (0, 0, 1), (2,), 0),
    ],
)
def test_coordinate_renaming(N, v, cval, e0):
    base = monomial_integral(spec(N, v, cval, e0), 3)
    for perm in permutations(range(3)):
        Np = [tuple(r[j] for j in perm) for r in N]
        vp = tuple(v[j] for j in perm)
        assert monomial_integral(spec(Np, vp, cval, e0), 3) == base


@pytest.mark.parametrize("name", list(CATALOG))
@pytest.mark.parametrize("q", [2, 3, 5])
def test_poles_among_candidates(name, q):
    N = CATALOG[name]
    Zf = monomial_integral(spec(N), q)
    cs = candidate_poles([NumericalDatum(tuple(N), (0,) * len(N[0]))], q)
    for pole in real_poles(Zf):
        assert pole_contained(pole, cs)


@pytest.mark.parametrize(
    "N, cval",
    [
        ([(1, 2)], (1,)),
        ([(2, 0), (1, 1)], (1, 0)),
        ([(3, 1), (0, 2)], (0, 2)),
    ],
)
@pytest.mark.parametrize("q", [2, 3])
def test_integral_with_constants_against_counting(N, cval, q):
    # v(c_i) = cval_i is realized by the coefficient q^cval_i
    got = monomial_integral(spec(N, cval=cval), q)
    polys = tuple(((q**c, tuple(r)),) for r, c in zip(N, cval))
    assert verify(got, PolyMap(len(N[0]), polys), q).passed


@pytest.mark.parametrize("N, cval", [([(1, 2)], (1,)), ([(2, 0), (1, 1)], (0, 0))])
def test_ball_radius_by_substitution(N, cval):
    # x = p^e0 y maps O^n onto (P^e0)^n and scales each monomial by p^(e0 |N_i|)
    q, e0 = 3, 2
    n = len(N[0])
    lhs = monomial_integral(spec(N, cval=cval, e0=e0), q)
    shifted = tuple(c + e0 * sum(r) for r, c in zip(N, cval))
    rhs = monomial_integral(spec(N, cval=shifted), q) * constant(q, Fr(1, q ** (n * e0)))
    assert lhs == normalize(rhs)
    polys = tuple(((q**c, tuple(r)),) for r, c in zip(N, shifted))
    assert verify(normalize(rhs * constant(q, q ** (n * e0))), PolyMap(n, polys), q).passed


def test_norm_constancy():
    N = [(1, 1)]
    f = PolyMap(2, (((1, (1, 1)), (1, (3, 3))),))
    assert validate_norm_constancy(f, N, 3, 3) is None
    assert validate_norm_constancy(f, N, 2, 3) is not None
    V = MonomialAlgebraicSet(((1, 1),), (frozenset({(3, 3)}),))
    with pytest.warns(NormConstancyWarning):
        Zv = monomial_set_zeta(V, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert monomial_set_zeta(V, 3, validated=True) == Zv
    assert verify(Zv, f, 3).passed
    assert not verify(monomial_set_zeta(V, 2, validated=True), f, 2).passed
