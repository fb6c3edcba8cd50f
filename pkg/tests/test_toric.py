from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strategies import gauss_points, rngs
from hybridberk import selftest as S
from hybridberk.core_points import TrivPoint
from hybridberk.errors import InputError
from hybridberk.multipoly import MultiPoly
from hybridberk.oracles import sdr_axiom_suite, series_expansion_oracle
from hybridberk.polynomial import Q, Polynomial
from hybridberk.toric import (
    TRIVIAL_BASE, BaseRingSpec, GaussPoint, ToricDerived, alpha, alpha_inv, beta, dimension,
    f_expansion, j_eval, j_homotopy, j_point, lam, monomial_max, mstar, p_point_eval, q_eval,
    q_homotopy, q_point, skeleton_member, toric_close, toric_eval, toric_point_from_json,
    toric_point_to_json, toric_probes,
)

H3 = alpha(1, "hyb:3")
X1 = GaussPoint(H3, (6,), (0,))
F1 = MultiPoly.var(0, 1) + 3


def var(i, n):
    return MultiPoly.var(i, n)


# ------------------------------------------------------------ examples

def test_mstar_examples():
    assert mstar(var(0, 1)) == var(0, 2) * var(1, 2)
    assert mstar(MultiPoly.const(5, 2)) == MultiPoly.const(5, 4)
    f = var(0, 2) * var(1, 2) ** 2
    assert mstar(f) == MultiPoly.monomial((1, 2, 1, 2))


def test_f_expansion_examples():
    u = var(1, 2)
    assert f_expansion(u).coeffs == {(0,): MultiPoly.const(1, 1), (1,): MultiPoly.const(1, 1)}
    assert f_expansion(MultiPoly.const(7, 2)).coeffs == {(0,): MultiPoly.const(7, 1)}
    sq = f_expansion(u ** 2)
    assert [sq[(k,)] for k in range(3)] == [MultiPoly.const(c, 1) for c in (1, 2, 1)]


def test_series_oracle_examples():
    u = var(1, 2)
    assert series_expansion_oracle(u) == f_expansion(u)
    cube = series_expansion_oracle(u ** 3)
    assert [cube[(k,)] for k in range(4)] == [MultiPoly.const(c, 1) for c in (1, 3, 3, 1)]
    assert series_expansion_oracle(MultiPoly.const(4, 2)) == f_expansion(MultiPoly.const(4, 2))


@pytest.mark.parametrize("t", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)])
def test_q_eval_example(t):
    expected = Fraction(1, 9) if t == 0 else max(Fraction(1, 9), t / 3)
    assert q_eval(t, X1, F1).fraction == expected


def test_q_eval_time_one_formula():
    assert q_eval(1, X1, F1).fraction == max(H3.abs(3), H3.abs(6)) == Fraction(1, 3)


def test_q_point_examples():
    assert q_point(1, GaussPoint(H3, (3,), (Fraction(1, 27),))) == GaussPoint(H3, (0,), (Fraction(1, 3),))
    x = GaussPoint(H3, (0, 0), (Fraction(1, 2), Fraction(2)))
    for t in (Fraction(1, 3), Fraction(2, 3), Fraction(1)):
        assert toric_close(q_point(t, x), x)
    assert isinstance(q_point(Fraction(1, 2), X1), ToricDerived)
    assert q_point(0, X1) is X1


def test_p_point_examples():
    u = var(1, 2)
    assert p_point_eval(Fraction(1, 2), X1, u).fraction == 1
    g = var(0, 2) + 3
    assert p_point_eval((Fraction(0),), X1, g) == toric_eval(X1, F1)
    assert p_point_eval(Fraction(1, 2), X1, g) == toric_eval(X1, F1)
    gu = var(0, 2) * var(1, 2) + 3
    assert p_point_eval(0, X1, gu) == toric_eval(X1, F1)


def test_skeleton_examples():
    assert skeleton_member(GaussPoint(H3, (0,), (Fraction(1, 5),)))
    assert not skeleton_member(GaussPoint(H3, (6,), (0,)))
    assert skeleton_member(GaussPoint(H3, (3,), (Fraction(1, 2),)))
    assert not skeleton_member(q_point(Fraction(1, 2), X1))
    assert skeleton_member(q_point(1, X1))


def test_alpha_examples():
    triv = alpha(0, "hyb:3")
    assert triv.is_trivial and triv.abs(6) == 1 and triv.abs(0) == 0
    assert H3.abs(6) == Fraction(1, 3) and H3.abs(Fraction(1, 9)) == 9
    res = alpha(1, "dvr:3")
    assert res.abs(6) == 0 and res.abs(5) == 1
    with pytest.raises(InputError):
        res.abs(Fraction(1, 3))
    assert alpha_inv(alpha(Fraction(2, 5), "dvr:5")) == Fraction(2, 5)
    with pytest.raises(InputError):
        BaseRingSpec.parse("hyb:4")


def test_beta_examples():
    x = GaussPoint(alpha(0.8, "hyb:3"), (0,), (1,))
    assert beta(0, x) == pytest.approx(0.8)
    assert beta(1, x) == 0
    assert beta(0.5, x) == pytest.approx(0.5)


def test_j_point_examples():
    x = GaussPoint(alpha(Fraction(9, 10), "hyb:3"), (0,), (Fraction(1, 2),))
    assert j_point(Fraction(1, 2), x) == GaussPoint(alpha(Fraction(1, 2), "hyb:3"), (0,), (Fraction(1, 2),))
    triv = GaussPoint(alpha(0, "hyb:3"), (0,), (Fraction(2),))
    assert j_point(Fraction(1, 3), triv) == triv
    eta = TrivPoint(Polynomial.T(Q), Fraction(1, 2))
    assert j_point(Fraction(1, 2), eta) == eta
    assert lam(j_point(1, x)).is_trivial


def test_json_roundtrip():
    for x in (X1, q_point(Fraction(1, 2), X1), GaussPoint(TRIVIAL_BASE, (1, 2), (3, 0))):
        assert toric_point_from_json(toric_point_to_json(x)) == x


def test_dimension_mismatch_rejected():
    with pytest.raises(InputError):
        toric_eval(X1, var(0, 2))


# ---------------------------------------------------------- invariants

@settings(max_examples=40)
@given(gauss_points, rngs, st.lists(st.fractions(0, 1, max_denominator=12), min_size=2, max_size=2))
def test_q_monotone_in_time(x, rng, ts):
    f = S.random_multipoly(rng, x.n, p=x.base.spec.prime)
    a, b = sorted(ts)
    assert q_eval(a, x, f).value <= q_eval(b, x, f).value * (1 + 1e-12)


@settings(max_examples=40)
@given(gauss_points, rngs)
def test_q_time_one_is_monomial_max(x, rng):
    f = S.random_multipoly(rng, x.n, max_deg=4, p=x.base.spec.prime)
    assert q_eval(1, x, f) == monomial_max(x, f)


@given(gauss_points, st.fractions(0, 1, max_denominator=16))
def test_q_preserves_base(x, t):
    assert lam(q_point(t, x)) == lam(x)


@given(gauss_points)
def test_q_lands_in_skeleton(x):
    assert skeleton_member(q_point(1, x))


@given(gauss_points.filter(skeleton_member), st.fractions(0, 1, max_denominator=16))
def test_q_fixes_skeleton(x, t):
    assert toric_close(q_point(t, x), x)


@settings(max_examples=30)
@given(rngs)
def test_f_expansion_matches_oracle(rng):
    g = S.random_torus_poly(rng, int(rng.integers(1, 3)), max_deg=3)
    assert f_expansion(g) == series_expansion_oracle(g)


@given(gauss_points, rngs)
def test_gauss_multiplicativity(x, rng):
    p = x.base.spec.prime
    f = S.random_multipoly(rng, x.n, p=p)
    g = S.random_multipoly(rng, x.n, p=p)
    a, b, ab = toric_eval(x, f), toric_eval(x, g), toric_eval(x, f * g)
    assert ab.value == pytest.approx(a.value * b.value, rel=1e-10, abs=1e-300)


@given(gauss_points.filter(skeleton_member), st.fractions(0, 1, max_denominator=16), rngs)
def test_j_closed_form_matches_formula(x, t, rng):
    f = S.random_multipoly(rng, x.n, p=x.base.spec.prime)
    assert toric_eval(j_point(t, x), f).same(j_eval(t, x, f), 1e-12)


def test_q_and_J_axioms():
    rep = sdr_axiom_suite(q_homotopy(), lambda rng: S.sample_gauss(rng), trials=60, seed=31)
    assert rep.ok, rep.summary()
    rep = sdr_axiom_suite(j_homotopy(), lambda rng: S.sample_gauss(rng, skeleton=True), trials=60,
                          seed=32)
    assert rep.ok, rep.summary()


def test_probes_are_integral():
    for f in toric_probes(2):
        assert all(c.denominator == 1 for _, c in f.items())
    assert dimension(X1) == 1
