import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from strategies import arch_points, line_points, polys, scalars, triv_points
from hybridberk.core_points import (
    ArchPoint, TrivPoint, conjugate, default_probes, enumerate_irreducibles, eval_archimedean, eval_trivial,
    lambda_of, points_close, restrict_scalars, seminorm,
)
from hybridberk.errors import InputError, NotMonic, WrongField
from hybridberk.oracles import taylor_norm_oracle
from hybridberk.polynomial import QI_FIELD, Q, Polynomial
from hybridberk.scalars import QI

T = Polynomial.T(QI_FIELD)
I = QI(0, 1)


def val(v):
    return v.value


# ------------------------------------------------------------ examples

@pytest.mark.parametrize("f, z, t, expected", [
    (T, 2, 1.0, 2.0),
    (T - 1, 1, 0.5, 0.0),
    (T, 4, 0.5, 2.0),
])
def test_eval_archimedean_examples(f, z, t, expected):
    v = eval_archimedean(f, ArchPoint(z, t))
    assert v.value == pytest.approx(expected, abs=1e-15)
    assert not v.exact


def test_eval_trivial_examples():
    p = Polynomial([-2, 0, 1], QI_FIELD)
    half = Fraction(1, 2)
    assert eval_trivial(Polynomial.const(7, QI_FIELD), TrivPoint(p, half)).fraction == 1
    assert eval_trivial(p, TrivPoint(p, half)).fraction == half
    assert eval_trivial(T ** 3, TrivPoint(T, 2)).fraction == 8
    assert eval_trivial(Polynomial([0], QI_FIELD), TrivPoint(T, half)).fraction == 0


def test_seminorm_examples():
    assert seminorm(ArchPoint(3, 1), T).value == pytest.approx(3.0)
    v = seminorm(TrivPoint(T, Fraction(1, 2)), T ** 2)
    assert v.exact and v.fraction == Fraction(1, 4)
    assert str(v) == "0.25 exact"


def test_lambda_examples():
    assert lambda_of(ArchPoint(5, 0.3)) == 0.3
    assert lambda_of(TrivPoint(T - I, Fraction(1, 3))) == 0


def test_conjugate_examples():
    assert conjugate(ArchPoint(1 + 2j, 0.5)) == ArchPoint(1 - 2j, 0.5)
    assert conjugate(TrivPoint(T - I, Fraction(3, 10))) == TrivPoint(T + I, Fraction(3, 10))
    assert conjugate(TrivPoint(T, Fraction(1, 2))) == TrivPoint(T, Fraction(1, 2))


def test_conjugate_rejects_rational_points():
    with pytest.raises(WrongField):
        conjugate(ArchPoint(1, 0.5, Q))


def test_restrict_scalars_examples():
    r = Fraction(3, 10)
    assert restrict_scalars(TrivPoint(T - I, r)) == TrivPoint(Polynomial([1, 0, 1], Q), r)
    assert restrict_scalars(TrivPoint(T - 2, r)) == TrivPoint(Polynomial([-2, 1], Q), r)
    assert points_close(restrict_scalars(ArchPoint(1j, 0.5)), restrict_scalars(ArchPoint(-1j, 0.5)))


@given(polys(Q), st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2)]))
def test_restrict_scalars_preserves_rational_evaluations(f, r):
    x = TrivPoint(T - I, r)
    assert eval_trivial(f.with_field(QI_FIELD), x).fraction == seminorm(restrict_scalars(x), f).fraction


def test_enumeration_starts_with_T():
    assert enumerate_irreducibles(Q, 1)[0] == Polynomial.T(Q)
    assert enumerate_irreducibles(QI_FIELD, 1)[0] == T


def test_enumeration_is_duplicate_free_and_monic():
    ps = enumerate_irreducibles(QI_FIELD, 40)
    assert len(set(ps)) == 40
    assert all(p.is_monic() for p in ps)
    assert [p.degree for p in ps] == sorted(p.degree for p in ps) or ps[0].degree == 1


def test_point_validation():
    with pytest.raises(InputError):
        ArchPoint(1, 0.0)
    with pytest.raises(InputError):
        ArchPoint(1, 1.5)
    with pytest.raises(InputError):
        TrivPoint(T, Fraction(-1))
    with pytest.raises(NotMonic):
        TrivPoint(2 * T, Fraction(1, 2))


def test_taylor_oracle_examples():
    p = Polynomial([-2, 0, 1], QI_FIELD)
    assert taylor_norm_oracle(p, p, 0.5).value == pytest.approx(0.5)
    assert taylor_norm_oracle(Polynomial.const(1, QI_FIELD), p, 0.3).value == 1.0
    g = Polynomial([1, 1], QI_FIELD)
    assert taylor_norm_oracle(p * g, p, 0.0).value == 0.0


# ---------------------------------------------------------- invariants

@given(polys(), polys(), line_points())
def test_multiplicativity(f, g, x):
    a, b, ab = seminorm(x, f), seminorm(x, g), seminorm(x, f * g)
    if isinstance(x, TrivPoint):
        assert ab.fraction == a.fraction * b.fraction
    else:
        assert ab.value == pytest.approx(a.value * b.value, rel=1e-12, abs=1e-300)


@given(scalars(), line_points())
def test_constants_bounded_by_hybrid_norm(a, x):
    v = seminorm(x, Polynomial.const(a, QI_FIELD)).value
    bound = max(abs(complex(a)), 1.0 if a else 0.0)
    assert v <= bound * (1 + 1e-12)


@given(polys(max_degree=3), line_points(), st.integers(1, 5))
def test_power_compatibility(f, x, n):
    assert seminorm(x, f ** n).value == pytest.approx(seminorm(x, f).value ** n, rel=1e-10, abs=1e-300)


@given(triv_points())
def test_triv_canonical_form_idempotent(x):
    assert TrivPoint(x.p, x.r, x.irr) == x


@given(line_points())
def test_conjugation_is_involution(x):
    assert conjugate(conjugate(x)) == x


@given(line_points())
def test_conjugation_fixes_exactly_real_points(x):
    if isinstance(x, ArchPoint):
        # probe equality is a tolerance test, so keep away from its resolution
        assume(x.z.imag == 0 or abs(x.z.imag) > 1e-3)
        real = x.z.imag == 0
        probes = list(default_probes(QI_FIELD))
    else:
        real = x.p == x.p.conj()
        # eta_{p,0} is only told apart from eta_{conj p,0} by polynomials vanishing at a root
        probes = list(default_probes(QI_FIELD)) + [x.p, x.p.conj()]
    y = conjugate(x)
    same = all(seminorm(x, f).same(seminorm(y, f)) for f in probes)
    assert same == real


@given(triv_points(), polys(max_degree=5))
def test_eta_matches_taylor_oracle(x, f):
    if x.p.degree > 2 or f.is_zero():
        return
    exact = eval_trivial(f, x).value
    assert taylor_norm_oracle(f, x.p, x.r).value == pytest.approx(exact, rel=1e-8)


@given(arch_points())
def test_lambda_of_arch_is_t(x):
    assume(x.z == 0 or abs(x.z) > 1e-6)  # centres below the zero threshold are kernel points
    assert lambda_of(x) == x.t
    assert math.isclose(seminorm(x, T).value, abs(x.z) ** x.t, rel_tol=1e-12, abs_tol=1e-12)
