from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strategies import base_points, rngs
from hybridberk import selftest as S
from hybridberk.core_points import ArchPoint
from hybridberk.dedekind import (
    ArchBranch, PrimeBranch, Trivial, _stage1_homotopy, _stage2_homotopy, assembled_homotopy,
    assembled_probes, assembled_sdr, base_eval, base_point_from_json, canonical_prime,
    gaussian_primes, height_homotopy, height_retraction, ht, is_gaussian_prime, ord_prime, r_t,
    rational_primes, spectrum_cover_locate,
)
from hybridberk.errors import ArchNotAllowed, InputError
from hybridberk.oracles import sdr_axiom_suite
from hybridberk.polynomial import Q
from hybridberk.scalars import QI
from hybridberk.toric import GaussPoint, lam, toric_close

primes = st.sampled_from([2, 3, 5, 7, 11])
levels = st.fractions(0, 1, max_denominator=20)
nonzero_ints = st.integers(-10 ** 6, 10 ** 6).filter(bool)


# ------------------------------------------------------------ examples

def test_base_eval_examples():
    z = PrimeBranch(3, Fraction(1, 4))
    assert base_eval(27, z).fraction == Fraction(1, 64)
    assert base_eval(10, z).fraction == 1
    assert base_eval(0, z).fraction == 0
    assert base_eval(5, PrimeBranch(3, 1)).fraction == 1
    assert base_eval(3, PrimeBranch(3, 0)).fraction == 0
    assert base_eval(-7, ArchBranch(1)).fraction == 7
    assert base_eval(4, ArchBranch(Fraction(1, 2))).value == pytest.approx(2.0)


def test_c_one_is_trivial_norm():
    assert PrimeBranch(7, 1) == Trivial("Z")


def test_ht_examples():
    assert ht(Trivial()).fraction == 1
    assert ht(PrimeBranch(3, Fraction(1, 4))).fraction == Fraction(1, 4)
    assert ht(PrimeBranch(5, 0)).fraction == 0
    with pytest.raises(ArchNotAllowed):
        ht(ArchBranch(Fraction(1, 2)))


def test_r_t_examples():
    z = PrimeBranch(3, Fraction(1, 4))
    assert r_t(z, 0) == z
    assert r_t(z, Fraction(1, 5)) == z
    assert r_t(z, Fraction(1, 2)) == PrimeBranch(3, Fraction(1, 2))
    assert r_t(PrimeBranch(3, 0), Fraction(1, 2)) == Trivial()


def test_literal_r_t_does_not_end_at_the_trivial_norm():
    z = PrimeBranch(2, Fraction(1, 2))
    end = r_t(z, 1)
    assert isinstance(end, PrimeBranch) and float(end.c) == pytest.approx(0.5 ** 0.5)
    rep = sdr_axiom_suite(height_homotopy(), S.sample_base_point, trials=200, seed=41)
    assert rep.ok, rep.summary()


def test_spectrum_cover_examples():
    assert spectrum_cover_locate(Trivial()) == "TrivialOverlap"
    assert spectrum_cover_locate(ArchBranch(Fraction(1, 2))) == "Arch(real)"
    assert spectrum_cover_locate(PrimeBranch(5, Fraction(3, 10))) == "NonArch"


def test_gaussian_primes():
    assert is_gaussian_prime(QI(1, 1)) and is_gaussian_prime(QI(3))
    assert not is_gaussian_prime(QI(5)) and not is_gaussian_prime(QI(2))
    gp = gaussian_primes(30)
    assert len(gp) == len(set(gp))
    assert all(canonical_prime(p, "Zi") == p for p in gp)
    assert ord_prime(QI(2), QI(1, 1), "Zi") == 2
    assert rational_primes(20) == [2, 3, 5, 7, 11, 13, 17, 19]


def test_base_point_json():
    z = PrimeBranch(5, Fraction(2, 7))
    assert base_point_from_json(z.to_json()) == z
    with pytest.raises(InputError) as e:
        base_point_from_json({"branch": "prime", "p": 4, "c": "1/2"})
    assert "base" in e.value.field


# ---------------------------------------------------------- invariants

@given(primes, levels, nonzero_ints, nonzero_ints)
def test_prime_branch_multiplicative(p, c, a, b):
    z = PrimeBranch(p, c)
    assert base_eval(a * b, z).fraction == base_eval(a, z).fraction * base_eval(b, z).fraction


@given(nonzero_ints, nonzero_ints)
def test_trivial_multiplicative(a, b):
    z = Trivial()
    assert base_eval(a * b, z).fraction == base_eval(a, z).fraction * base_eval(b, z).fraction


@given(st.floats(0.01, 1), nonzero_ints, nonzero_ints)
def test_arch_multiplicative(rho, a, b):
    z = ArchBranch(rho)
    assert base_eval(a * b, z).value == pytest.approx(base_eval(a, z).value * base_eval(b, z).value,
                                                      rel=1e-12)


def test_ht_tracks_grid_exactly():
    step = Fraction(1, 1000)
    prev = None
    for k in range(1000):
        h = ht(PrimeBranch(3, k * step)).fraction
        if prev is not None:
            assert h - prev == step
        prev = h


@given(primes, levels, levels)
def test_r_t_fixed_points(p, c, t):
    z = PrimeBranch(p, c)
    if t > 0:
        assert (r_t(z, t) == z) == (ht(z).fraction >= t)


@given(primes, levels, levels)
def test_height_retraction_fixed_points(p, c, t):
    z = PrimeBranch(p, c)
    assert (height_retraction(z, t) == z) == (ht(z).fraction >= t)
    assert height_retraction(z, 1) == Trivial()


# ------------------------------------------------------- assembled SDR

def test_assembled_time_zero():
    x = ArchPoint(0.3, 0.5, Q)
    assert assembled_sdr(0, x) is x


def test_assembled_stage_one_leaves_gauss_points():
    x = GaussPoint(PrimeBranch(3, Fraction(1, 2)), (2,), (Fraction(1, 3),))
    for s in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
        assert assembled_sdr(s, x) == x


@pytest.mark.parametrize("z, t", [(0.0, 0.04), (1.0, 0.02), (0.7, 0.3), (-2.5, 0.9)])
def test_assembled_arch_points_end_over_trivial_norm(z, t):
    y = assembled_sdr(1, ArchPoint(z, t, Q))
    assert not isinstance(y, ArchPoint)
    assert lam(y).is_trivial


@settings(max_examples=30)
@given(rngs)
def test_assembled_splice(rng):
    x = S.sample_assembled(rng)
    stage1, stage2 = _stage1_homotopy("Z", 8), _stage2_homotopy()
    left = stage1(1.0, x)
    right = stage2(0, left)
    mid = assembled_sdr(Fraction(1, 2), x)
    probes = assembled_probes()
    if isinstance(left, ArchPoint):
        assert left == right == mid
    else:
        assert toric_close(left, right, probes, 1e-9)
        assert toric_close(mid, right, probes, 1e-9)


def test_assembled_axioms():
    rep = sdr_axiom_suite(assembled_homotopy("Z"), S.sample_assembled, trials=60, seed=42)
    assert rep.ok, rep.summary()


def test_assembled_rejects_wrong_field():
    with pytest.raises(InputError):
        assembled_sdr(Fraction(1, 2), ArchPoint(0.3, 0.5))


@given(base_points)
def test_sampled_base_points_are_valid(z):
    assert 0 <= ht(z).value <= 1
    assert height_retraction(z, 0) == z
