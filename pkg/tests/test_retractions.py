import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from strategies import arch_points, cylinder_coords, line_points, rngs, times, triv_points
from hybridberk import selftest as S
from hybridberk.core_points import (
    ArchPoint, TrivPoint, conjugate, lambda_of, points_close, resolve, seminorm,
)
from hybridberk.discs import CylinderCoord, DiscSpec, RegionTag, delta_threshold, region_member
from hybridberk.errors import BadDeltas, KernelPoint, NotEquivariant, OutOfRegion
from hybridberk.homotopy import Homotopy, identity_homotopy
from hybridberk.lifting import LiftContext, lift_homotopy, lift_path
from hybridberk.oracles import sdr_axiom_suite
from hybridberk.polynomial import QI_FIELD, Q, Polynomial
from hybridberk.retractions import (
    Schedule, axis_collapse_g, cylinder_homotopy, cylinder_sdr_nplus, disc_sdr_gn, fiber_squeeze_R,
    global_homotopy, global_sdr, hybrid_cylinder_homotopy, infinity_chart, real_field_descend,
    retraction_rz, rz_homotopy_eval, squeeze_homotopy,
)
from hybridberk.rootfinding import roots_numeric

T = Polynomial.T(QI_FIELD)
SQRT2 = Polynomial([-2, 0, 1], QI_FIELD)


# ------------------------------------------------------------- cylinder

@given(times, st.floats(0, 1))
def test_cylinder_axis_fixed(t, s):
    assert cylinder_sdr_nplus(t, CylinderCoord(0, s)) == CylinderCoord(0, s)


@given(cylinder_coords)
def test_cylinder_identity_at_zero(c):
    out = cylinder_sdr_nplus(0.0, c)
    assert abs(out.w - c.w) <= 1e-12 and abs(out.s - c.s) <= 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.7, 2.0, -2.5])
def test_cylinder_vertical_ray_example(theta):
    w = 0.5 * cmath.exp(1j * theta)
    out = cylinder_sdr_nplus(1.0, CylinderCoord(w, 0.5))
    assert abs(out.w - w) <= 1e-12 and out.s == 0.0


def test_cylinder_sdr_axioms():
    rep = sdr_axiom_suite(cylinder_homotopy(), S.sample_cyl, trials=300, seed=11)
    assert rep.ok, rep.summary()


@given(cylinder_coords, times)
def test_cylinder_keeps_angle(c, t):
    out = cylinder_sdr_nplus(t, c)
    if c.radius > 1e-9 and out.radius > 1e-9:
        assert abs(out.w / out.radius - c.w / c.radius) <= 1e-9


# ---------------------------------------------------------- axis collapse

def test_axis_collapse_examples():
    d = delta_threshold(SQRT2)
    root = roots_numeric(SQRT2)[0]
    assert axis_collapse_g(1.0, ArchPoint(root, d / 2), SQRT2, d) == TrivPoint(SQRT2, Fraction(0))
    assert axis_collapse_g(0.5, ArchPoint(root, d / 2), SQRT2, d).t == pytest.approx(d / 4)
    eta = TrivPoint(SQRT2, Fraction(1, 2))
    assert axis_collapse_g(0.5, eta, SQRT2, d) == eta


def test_axis_collapse_rejects_points_off_nplus():
    with pytest.raises(OutOfRegion):
        axis_collapse_g(0.5, ArchPoint(0.01, 0.5), T, 1.0)


# ---------------------------------------------------------- fibre squeeze

def test_squeeze_examples():
    x = ArchPoint(1 + 1j, 0.8)
    assert fiber_squeeze_R(0.0, x, 0.8, 0.3) == x
    assert fiber_squeeze_R(1.0, x, 0.8, 0.3) == ArchPoint(1 + 1j, 0.3)
    eta = TrivPoint(T - 1, Fraction(1, 3))
    assert fiber_squeeze_R(0.6, eta, 0.8, 0.3) is eta
    with pytest.raises(BadDeltas):
        fiber_squeeze_R(0.5, x, 0.3, 0.8)


@given(arch_points(), times, times, st.floats(0.01, 1.0))
def test_squeeze_lambda_monotone(x, s1, s2, ratio):
    delta = 1.0
    dp = ratio * delta
    s1, s2 = sorted((s1, s2))
    a = lambda_of(fiber_squeeze_R(s1, x, delta, dp))
    b = lambda_of(fiber_squeeze_R(s2, x, delta, dp))
    assert b <= a <= lambda_of(x)


def test_squeeze_axioms():
    H = squeeze_homotopy(1.0, 0.5)
    rep = sdr_axiom_suite(H, lambda rng: S.sample_line_point(rng), trials=200, seed=12)
    assert rep.ok, rep.summary()


# --------------------------------------------------------------- r_z

def test_rz_examples():
    x = ArchPoint(0.5 + 0.2j, 0.7)
    assert retraction_rz(0, x) == x
    y = retraction_rz(0, ArchPoint(2, 0.5))
    assert y.z == pytest.approx(0.5) and y.t == 0.5
    assert retraction_rz(0, TrivPoint(T - 1, Fraction(1, 2))) == TrivPoint(T, Fraction(1))
    assert retraction_rz(1, TrivPoint(T - 1, Fraction(1, 2))) == TrivPoint(T - 1, Fraction(1, 2))


@given(line_points(), st.sampled_from([0, 1, -2]))
def test_rz_preserves_lambda_and_is_idempotent(x, z):
    y = retraction_rz(z, x)
    assert lambda_of(y) == lambda_of(x)
    assert points_close(retraction_rz(z, y), y, tol=1e-12)


@given(line_points(), st.sampled_from([0, 1]))
def test_rz_lands_in_disc(x, z):
    y = retraction_rz(z, x)
    spec = DiscSpec(Polynomial.linear_root(z, QI_FIELD), 1.0)
    assert region_member(y, spec, RegionTag.D, tol=1e-9)


@given(line_points(), times)
def test_rz_homotopy_lambda(x, tau):
    assert lambda_of(rz_homotopy_eval(tau, 0, x)) == lambda_of(x)


# ---------------------------------------------------------- infinity chart

def test_infinity_chart_examples():
    assert infinity_chart(ArchPoint(2, 0.3)).z == pytest.approx(0.5)
    assert infinity_chart(TrivPoint(T, Fraction(3))) == TrivPoint(T, Fraction(1, 3))
    eta01 = TrivPoint(T, Fraction(1))
    assert infinity_chart(eta01) == eta01
    with pytest.raises(KernelPoint):
        infinity_chart(ArchPoint(0, 0.5))


@given(arch_points())
def test_infinity_chart_inverts_T(x):
    assume(abs(x.z) > 1e-3)
    y = infinity_chart(x)
    assert seminorm(y, T).value == pytest.approx(1 / seminorm(x, T).value, rel=1e-12)
    assert points_close(infinity_chart(y), x)


# ---------------------------------------------------------------- lifting

def test_lift_path_half_turn():
    ctx = LiftContext(T ** 2)
    gamma = [ArchPoint(cmath.exp(1j * math.pi * k / 20), 0.5) for k in range(21)]
    end = lift_path(ctx, gamma, ArchPoint(1, 0.5))[-1]
    assert abs(end.z - 1j) <= 1e-9 and end.t == 0.5


def test_lift_path_constant():
    ctx = LiftContext(T ** 2)
    x = ArchPoint(0.3 + 0.4j, 0.5)
    gamma = [ArchPoint((0.3 + 0.4j) ** 2, 0.5)] * 6
    assert lift_path(ctx, gamma, x) == [x] * 6


def test_lift_path_freezes_at_critical_value():
    ctx = LiftContext(T ** 2)
    gamma = [ArchPoint(0.5 * (1 - k / 10) if k < 10 else 0.0, 0.5) for k in range(15)]
    out = lift_path(ctx, gamma, ArchPoint(math.sqrt(0.5), 0.5))
    assert all(y == out[10] for y in out[10:])
    assert abs(out[10].z) <= 1e-6


@given(st.floats(0.05, 0.9), st.floats(0, 2 * math.pi), times)
def test_lift_homotopy_identity(r, theta, tau):
    ctx = LiftContext(SQRT2)
    x = ArchPoint(math.sqrt(2) + r * 0.1 * cmath.exp(1j * theta), 0.3)
    assert points_close(lift_homotopy(ctx, identity_homotopy(), x)(tau), x)


def test_lift_homotopy_constant_on_fixed_set():
    ctx = LiftContext(T ** 2)
    H = hybrid_cylinder_homotopy(0.5)
    x = TrivPoint(T, Fraction(1, 4))
    assert lift_homotopy(ctx, H, x)(0.7) == x


def test_lifting_commutes_with_cover():
    for c in S.check_lifting(12, seed=21):
        assert c.ok, (c.name, c.first_failure)


# ------------------------------------------------------------ disc SDR

def test_disc_sdr_identity_outside_disc():
    x = ArchPoint(5, 0.5)
    for t in (0.0, 0.4, 1.0):
        assert disc_sdr_gn(T - 1, 1.0, t, x) == x


@given(times, st.integers(0, 20))
def test_disc_sdr_fixes_triv_segment(t, k):
    d = delta_threshold(SQRT2)
    x = TrivPoint(SQRT2, Fraction(k, 20))
    assert disc_sdr_gn(SQRT2, d, t, x) == x


@settings(max_examples=25)
@given(rngs)
def test_disc_sdr_lands_in_N(rng):
    d = min(0.5, delta_threshold(SQRT2))
    x = S.sample_disc_point(rng, SQRT2, d)
    y = disc_sdr_gn(SQRT2, d, 1.0, x)
    spec = DiscSpec(SQRT2, d)
    inside = region_member(x, spec, RegionTag.D)
    assert (not inside) or region_member(y, spec, RegionTag.N, tol=1e-8) or \
        region_member(y, spec, RegionTag.TRIV_SEGMENT)


# ---------------------------------------------------------- global SDR

SCHED = Schedule.build(QI_FIELD, 8)


def test_schedule_shape():
    assert SCHED.disjoint
    assert SCHED.irreducibles[0] == T and SCHED.thresholds[0] == 1.0
    assert all(a >= b for a, b in zip(SCHED.radii, SCHED.radii[1:]))


@given(line_points())
def test_global_time_zero_is_identity(x):
    assert global_sdr(SCHED, 0.0, x).point is resolve(x)


@given(triv_points(), times)
def test_global_fixes_trivial_fibre(x, s):
    assert global_sdr(SCHED, s, x).point == x


@pytest.mark.parametrize("z, t", [(-1, 0.01), (0, 0.05), (1, 0.02), (1j, 0.03)])
def test_global_axis_points_reach_their_branch(z, t):
    res = global_sdr(SCHED, 1.0, ArchPoint(z, t))
    y = res.point
    assert isinstance(y, TrivPoint) and not res.truncated
    assert y.p == Polynomial.linear_root(z, QI_FIELD) and y.r < 1


def test_global_truncation_falls_back_to_gauss_point():
    res = global_sdr(SCHED, 1.0, ArchPoint(-0.9999, 0.01))
    assert res.truncated and res.point == TrivPoint(T, Fraction(1))


@settings(max_examples=30)
@given(arch_points(), times)
def test_global_lambda_compatible(x, s):
    assert lambda_of(global_sdr(SCHED, s, x).point) <= lambda_of(x) + 1e-15


def test_global_homotopy_lands_in_trivial_fibre():
    H = global_homotopy(SCHED)
    assert H.lambda_compatible
    assert isinstance(H(1.0, ArchPoint(0.3 + 2j, 0.4)), TrivPoint)


def test_gluing_hypotheses():
    for c in S.check_gluing(15, seed=22, depth=4):
        assert c.ok, (c.name, c.first_failure)


# ------------------------------------------------------------- descent

def test_descend_identity():
    H = real_field_descend(identity_homotopy(), trials=40)
    x = ArchPoint(0.4 + 0.1j, 0.5, Q)
    assert points_close(H(0.5, x), x)


def test_descend_cylinder():
    H = real_field_descend(hybrid_cylinder_homotopy(1.0), trials=60)
    x = ArchPoint(0.2 + 0.1j, 0.5, Q)
    assert lambda_of(H(1.0, x)) <= 0.5
    assert resolve(H(1.0, x)).field is Q


def test_descend_rejects_rotation():
    def ev(t, x):
        x = resolve(x)
        if isinstance(x, TrivPoint):
            return x
        return ArchPoint(x.z * cmath.exp(1j * t), x.t, x.field)

    with pytest.raises(NotEquivariant):
        real_field_descend(Homotopy(ev, name="rotate"), trials=40)


def test_conjugation_equivariance_checks():
    for c in S.check_conjugation(20, seed=23):
        assert c.ok, (c.name, c.first_failure)


@given(line_points(), times)
def test_rz_commutes_with_conjugation(x, t):
    a = conjugate(rz_homotopy_eval(t, 1, conjugate(x)))
    assert points_close(a, rz_homotopy_eval(t, 1, x))
