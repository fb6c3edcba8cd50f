from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import arch_points, times, triv_points
from hybridberk.core_points import TrivPoint
from hybridberk.errors import DomainMismatch, InputError
from hybridberk.homotopy import Homotopy, compose_many, homotopy_compose, identity_homotopy
from hybridberk.oracles import sdr_axiom_suite
from hybridberk.polynomial import QI_FIELD, Polynomial

T = Polynomial.T(QI_FIELD)


def numeric(f, name, **kw):
    return Homotopy(f, close=lambda a, b, tol: abs(a - b) <= tol, name=name, **kw)


def to_zero():
    return numeric(lambda t, x: (1 - t) * x, "to0", target=lambda x: x == 0)


def shift():
    return numeric(lambda t, x: x + t, "shift")


@given(st.floats(0, 1), st.floats(-5, 5))
def test_compose_runs_G_then_F(t, x):
    F, G = shift(), to_zero()
    H = homotopy_compose(F, G)
    expected = G(2 * t, x) if t <= 0.5 else F(2 * t - 1, G(1.0, x))
    assert H(t, x) == pytest.approx(expected)


def test_compose_metadata():
    H = homotopy_compose(shift(), to_zero())
    assert H.name == "(shift <| to0)"
    assert H.target(3.0) and H(1.0, 2.0) == pytest.approx(1.0)


def test_compose_checks_domain():
    F = numeric(lambda t, x: x, "pos", domain=lambda x: x > 0)
    H = homotopy_compose(F, to_zero())
    assert H(0.25, 4.0) == pytest.approx(2.0)
    with pytest.raises(DomainMismatch):
        H(0.75, 4.0)


def test_compose_many_nests_to_the_left():
    marks = []

    def piece(k):
        def ev(t, x):
            if 0 < t < 1:
                marks.append(k)
            return x + k * t
        return numeric(ev, f"F{k}")

    H = compose_many([piece(1), piece(2), piece(3)])
    assert H(1.0, 0.0) == pytest.approx(6.0)
    for t, k in ((0.25, 1), (0.6, 2), (0.9, 3)):
        marks.clear()
        H(t, 0.0)
        assert marks == [k]
    # (F_2 <| F_1)(1, .) agrees with (F_3 <| F_2 <| F_1)(1 - 2^-2, .)
    assert compose_many([piece(1), piece(2)])(1.0, 0.0) == pytest.approx(H(0.75, 0.0))


def test_time_outside_unit_interval_rejected():
    with pytest.raises(InputError):
        identity_homotopy()(1.5, 0.0)
    with pytest.raises(InputError):
        compose_many([])


@given(st.one_of(arch_points(), triv_points()), times)
def test_identity_homotopy(x, t):
    assert identity_homotopy()(t, x) is x


def _triv_sampler(rng):
    return TrivPoint(T, Fraction(int(rng.integers(0, 41)), 20))


def _toward_half(broken: bool):
    half = Fraction(1, 2)

    def ev(t, x):
        t = Fraction(t)
        r = (1 - t) * x.r + t * half
        if broken:
            r += t * (1 - t) / 4
        return TrivPoint(T, r)

    return Homotopy(ev, target=lambda x: x.r == half, name="broken" if broken else "half")


def test_axiom_suite_passes_identity():
    rep = sdr_axiom_suite(identity_homotopy(), _triv_sampler, trials=100)
    assert rep.ok and rep.errors == 0


def test_axiom_suite_passes_straight_line():
    assert sdr_axiom_suite(_toward_half(False), _triv_sampler, trials=100).ok


def test_axiom_suite_catches_unfixed_target():
    rep = sdr_axiom_suite(_toward_half(True), _triv_sampler, trials=100)
    assert not rep.ok
    assert rep.failing() == ["fixed_set"]
    w = rep.tallies["fixed_set"].first_counterexample
    assert {"x", "t", "y", "z"} <= set(w)
    assert "FAILING" in rep.summary()
    assert rep.to_json()["axioms"]["fixed_set"]["failed"] > 0
