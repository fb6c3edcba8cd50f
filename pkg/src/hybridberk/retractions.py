"""Explicit strong deformation retractions of the hybrid affine line.

Building blocks, each available as a plain function and as a ``Homotopy``:

* the cylinder retraction of the unit cylinder onto bottom, wall and axis,
  transported to the disc D(T, delta) by g_delta;
* the fibre squeeze R, which pushes lambda down from delta to delta';
* the per-disc retraction G_n of D(p, delta) onto N(p, delta): the cylinder
  retraction lifted through the cover T -> p(T), followed by the collapse of
  the axis onto eta_{p,0};
* the retraction at infinity G_0, through the chart T -> 1/T;
* the glued global retraction of the line onto its trivially-valued fibre;
* the retraction r_z onto D(T - z, 1);
* descent of conjugation-equivariant homotopies from Q(i) to Q.

Composite times follow F <| G: G runs on [0, 1/2] and F on [1/2, 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core_points import (ArchPoint, HybridPoint, TrivPoint, conjugate,
                          enumerate_irreducibles, eta01, extend_scalars, irreducibility_flag,
                          lambda_of, points_close, register_derived, resolve,
                          restrict_scalars)
from .discs import (INFINITY, CylinderCoord, DiscSpec, RegionTag, delta_threshold,
                    g_delta, g_delta_center, g_delta_inverse, g_delta_log_modulus, region_member)
from .errors import (BadDeltas, DeltaTooLarge, InputError, KernelPoint, NotEquivariant,
                     OutOfDisc, OutOfRegion)
from .homotopy import Homotopy, compose_many, homotopy_compose
from .lifting import LiftContext, lift_homotopy, lift_path, track
from .polynomial import Q, QI_FIELD, FieldSpec, Polynomial
from .rootfinding import roots_numeric
from .scalars import QI

EQ_TOL = 1e-9
# Projection centres of the two cylinder profiles, in (radius, height) coordinates.
CYL_EYE = (0.5, 2.0)
# below exp(-FLUSH_LOG) lifted centres are carried in log-polar form
FLUSH_LOG = 600.0
PUNCTURED_EYE = (0.0, 2.0)


def _projection_witness(evaluate):
    """Witness for homotopies that move every point along a fixed segment
    towards its final position: H(t0, H(u, x)) = H(t1, x) for
    u = (t1 - t0) / (1 - t0)."""

    def witness(t0, t1, x):
        if t1 <= t0:
            return x
        if t0 >= 1.0:
            return evaluate(1.0, x)
        return evaluate(min(1.0, (t1 - t0) / (1.0 - t0)), x)

    return witness


def _coerce_time(t) -> float:
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise InputError(f"time {t} outside [0,1]", field="time")
    return t


# ------------------------------------------------------------ cylinder

def profile_target(rho: float, h: float) -> tuple[float, float]:
    """Central projection from (1/2, 2) onto {rho=0} u {h=0} u {rho=1}."""
    ex, ey = CYL_EYE
    dx, dy = rho - ex, h - ey
    lam = ey / (ey - h)
    if dx < 0:
        lam = min(lam, ex / (ex - rho))
    elif dx > 0:
        lam = min(lam, (1 - ex) / (rho - ex))
    if lam <= 1.0:
        return rho, h
    px, py = ex + lam * dx, ey + lam * dy
    if rho < ex and lam == ex / (ex - rho):
        px = 0.0
    elif rho > ex and lam == (1 - ex) / (rho - ex):
        px = 1.0
    if lam == ey / (ey - h):
        py = 0.0
    return min(1.0, max(0.0, px)), min(1.0, max(0.0, py))


def punctured_profile_target(rho: float, h: float) -> tuple[float, float]:
    """Central projection from (0, 2) onto {h=0} u {rho=1} (rho > 0)."""
    ex, ey = PUNCTURED_EYE
    lam_h = ey / (ey - h)
    lam_w = 1.0 / rho if rho > 0 else math.inf
    lam = min(lam_h, lam_w)
    if lam <= 1.0:
        return rho, h
    if lam == lam_w:
        return 1.0, max(0.0, ey + lam * (h - ey))
    return min(1.0, lam * rho), 0.0


def _profile_path(rho, h, tau, target=profile_target):
    pr, ph = target(rho, h)
    if tau >= 1.0 or (pr == rho and ph == h):
        return pr, ph
    return (1 - tau) * rho + tau * pr, (1 - tau) * h + tau * ph


def cylinder_sdr_nplus(t: float, c: CylinderCoord) -> CylinderCoord:
    """Retraction of the unit cylinder onto bottom u wall u axis at time t.

    In (radius, height) coordinates each point moves linearly towards its
    central projection from (1/2, 2) onto the U-shaped profile boundary; the
    angle of w is kept.
    """
    t = _coerce_time(t)
    if not isinstance(c, CylinderCoord):
        c = CylinderCoord(*c)
    rho = abs(c.w)
    r1, h1 = _profile_path(rho, c.s, t)
    phase = c.w / rho if rho > 0 else 1 + 0j
    return CylinderCoord(phase * r1, h1)


def _on_profile_boundary(c: CylinderCoord, tol: float = EQ_TOL) -> bool:
    rho = abs(c.w)
    return rho <= tol or c.s <= tol or rho >= 1 - tol


def cylinder_homotopy() -> Homotopy:
    """The cylinder retraction as a Homotopy on CylinderCoord values."""

    def close(a, b, tol):
        return abs(a.w - b.w) <= tol and abs(a.s - b.s) <= tol

    return Homotopy(cylinder_sdr_nplus, target=_on_profile_boundary, name="cyl",
                    close=close, witness=_projection_witness(cylinder_sdr_nplus))


def _disc_T(delta: float, field: FieldSpec) -> DiscSpec:
    return DiscSpec(Polynomial.T(field), delta)


def hybrid_cylinder_sdr(t: float, x: HybridPoint, delta: float = 1.0) -> HybridPoint:
    """g_delta o cyl(t) o g_delta^{-1} on D(T, delta); identity elsewhere."""
    t = _coerce_time(t)
    x = resolve(x)
    if isinstance(x, TrivPoint) or t == 0.0:
        return x
    if not region_member(x, _disc_T(delta, x.field), RegionTag.D):
        return x
    try:
        c = g_delta_inverse(x, delta)
    except OutOfDisc:
        return x
    rho = abs(c.w)
    pr, ph = profile_target(rho, c.s)
    if pr == rho and ph == c.s:
        return x
    r1, h1 = _profile_path(rho, c.s, t)
    phase = c.w / rho if rho > 0 else 1 + 0j
    return g_delta(CylinderCoord(phase * r1, h1), delta, x.field)


def _nplus_target(p_or_T, delta):
    def target(x):
        x = resolve(x)
        spec = DiscSpec(p_or_T(x.field), delta)
        return (not region_member(x, spec, RegionTag.D)) or region_member(x, spec, RegionTag.NPLUS)
    return target


def _n_target(p_or_T, delta):
    def target(x):
        x = resolve(x)
        spec = DiscSpec(p_or_T(x.field), delta)
        return (not region_member(x, spec, RegionTag.D)) or region_member(x, spec, RegionTag.N)
    return target


def _lambda_at_most(delta):
    return lambda x: lambda_of(x) <= delta + EQ_TOL


def hybrid_cylinder_homotopy(delta: float = 1.0) -> Homotopy:
    """SDR of D(T, delta) onto N+(T, delta) = wall u axis u [eta_{0,0}, eta_{0,1}]."""

    def ev(t, x):
        return hybrid_cylinder_sdr(t, x, delta)

    return Homotopy(ev, domain=_lambda_at_most(delta),
                    target=_nplus_target(Polynomial.T, delta),
                    name=f"cyl[{delta:g}]", witness=_projection_witness(ev))


# ---------------------------------------------------------- fibre squeeze

def fiber_squeeze_R(s: float, x: HybridPoint, delta: float, delta_prime: float) -> HybridPoint:
    """ev(z, t) -> ev(z, min{t, delta(1-s) + delta' s}); trivially-valued points fixed."""
    s = _coerce_time(s)
    if not (0 < delta_prime <= delta <= 1):
        raise BadDeltas(f"need 0 < delta'={delta_prime} <= delta={delta} <= 1", field="delta")
    x = resolve(x)
    if isinstance(x, TrivPoint):
        return x
    if x.t > delta * (1 + 1e-12):
        raise OutOfRegion(f"lambda={x.t} exceeds delta={delta}", field="point")
    cap = delta * (1 - s) + delta_prime * s
    if x.t <= cap:
        return x
    return ArchPoint(x.z, cap, x.field, x.log_modulus)


def squeeze_homotopy(delta: float, delta_prime: float) -> Homotopy:
    if not (0 < delta_prime <= delta <= 1):
        raise BadDeltas(f"need 0 < delta'={delta_prime} <= delta={delta} <= 1", field="delta")

    def ev(s, x):
        return fiber_squeeze_R(s, x, delta, delta_prime)

    return Homotopy(ev, domain=_lambda_at_most(delta), target=_lambda_at_most(delta_prime),
                    name=f"R[{delta:g}->{delta_prime:g}]",
                    witness=lambda t0, t1, x: ev(t1, x))


# ----------------------------------------------------------------- r_z

def _as_scalar(z) -> QI:
    return z if isinstance(z, QI) else QI.of(z)


def _in_segment_of(x: TrivPoint, z: QI) -> bool:
    """x in [eta_{z,0}, eta_{z,1}]."""
    if x.r == 1:
        return True
    return x.r < 1 and x.p == Polynomial.linear_root(z, x.field)


def retraction_rz(z, x: HybridPoint) -> HybridPoint:
    """ev(w,t) -> ev(min{1, t/|w-z|}(w-z) + z, t); [eta_{z,0}, eta_{z,1}] fixed;
    every other trivially-valued point -> eta_{0,1}."""
    return rz_homotopy_eval(1.0, z, x)


def rz_homotopy_eval(tau: float, z, x: HybridPoint) -> HybridPoint:
    """Straight-line homotopy from the identity (tau=0) to r_z (tau=1)."""
    tau = _coerce_time(tau)
    z = _as_scalar(z)
    x = resolve(x)
    if x.field is Q and not z.is_rational():
        raise InputError("r_z over Q needs a rational z", field="z")
    if isinstance(x, TrivPoint):
        if _in_segment_of(x, z):
            return x
        r = x.r + Fraction(tau) * (1 - x.r) if tau < 1 else Fraction(1)
        return TrivPoint(x.p, r, x.irr)
    zc = complex(z)
    if x.extreme:
        if x.log_modulus < 0:
            w = 0j
        else:
            # |w - z| is astronomically large: r_z(x) = z + t * phase exactly
            target = zc + x.t * x.z
            if tau == 1.0:
                return ArchPoint(target, x.t, x.field)
            lm = math.log1p(-tau) + x.log_modulus
            return ArchPoint.polar(lm, x.z, x.t, x.field) if lm > 700 else \
                ArchPoint(zc + (1 - tau) * x.z * math.exp(x.log_modulus) + tau * x.t * x.z, x.t, x.field)
    else:
        w = x.z
    d = abs(w - zc)
    if d <= x.t:
        return x if not x.extreme else ArchPoint(w, x.t, x.field)
    f = x.t / d
    scale = (1 - tau) + tau * f
    return ArchPoint(zc + scale * (w - zc), x.t, x.field)


def rz_homotopy(z, field: FieldSpec = QI_FIELD) -> Homotopy:
    z = _as_scalar(z)

    def ev(t, x):
        return rz_homotopy_eval(t, z, x)

    def target(x):
        return region_member(x, DiscSpec(Polynomial.linear_root(z, resolve(x).field), 1.0), RegionTag.D)

    return Homotopy(ev, target=target, name=f"r_{z}", witness=_projection_witness(ev))


# ----------------------------------------------------------- infinity chart

def infinity_chart(x: HybridPoint) -> HybridPoint:
    """Pullback of seminorms under T -> 1/T (an involution off the kernel of T)."""
    x = resolve(x)
    if isinstance(x, ArchPoint):
        if x.extreme:
            return ArchPoint.polar(-x.log_modulus, x.z.conjugate(), x.t, x.field)
        if x.z == 0:
            raise KernelPoint("ev(0, t) lies in the kernel of T", field="point")
        return ArchPoint(1 / x.z, x.t, x.field)
    T = Polynomial.T(x.field)
    if x.p == T:
        if x.r == 0:
            raise KernelPoint("eta_{T,0} lies in the kernel of T", field="point")
        return TrivPoint(T, 1 / x.r)
    return TrivPoint(x.p.reversed_monic(), x.r, x.irr)


def _in_disc_infinity(x, delta):
    return region_member(x, DiscSpec(INFINITY, delta), RegionTag.D)


def infinity_sdr(t: float, x: HybridPoint, delta: float) -> HybridPoint:
    """Retraction of D(infinity, delta) onto N(infinity, delta).

    In the chart T -> 1/T the disc becomes D(T, delta) without its axis (the
    axis is the point at infinity), which retracts onto bottom u wall by
    projecting the profile from (0, 2).
    """
    t = _coerce_time(t)
    x = resolve(x)
    if isinstance(x, TrivPoint) or t == 0.0 or not _in_disc_infinity(x, delta):
        return x
    y = infinity_chart(x)
    try:
        c = g_delta_inverse(y, delta)
    except OutOfDisc:
        return x
    rho = abs(c.w)
    if rho == 0:
        return x
    pr, ph = punctured_profile_target(rho, c.s)
    if pr == rho and ph == c.s:
        return x
    r1, h1 = _profile_path(rho, c.s, t, punctured_profile_target)
    out = g_delta(CylinderCoord(c.w / rho * r1, h1), delta, x.field)
    return infinity_chart(out)


def infinity_homotopy(delta: float) -> Homotopy:
    def ev(t, x):
        return infinity_sdr(t, x, delta)

    def target(x):
        spec = DiscSpec(INFINITY, delta)
        return (not region_member(x, spec, RegionTag.D)) or region_member(x, spec, RegionTag.N)

    return Homotopy(ev, domain=_lambda_at_most(delta), target=target,
                    name=f"G_inf[{delta:g}]", witness=_projection_witness(ev))


# ------------------------------------------------------- lifted retractions

def _axis_root(p: Polynomial, z: complex, tol: float) -> complex | None:
    """The root of p that z numerically is, or None."""
    if p.abs_at(z) > tol * (1 + p.scale_at(z)):
        return None
    return min(roots_numeric(p), key=lambda r: abs(r - z))


def _factor_at(p: Polynomial, root: complex) -> Polynomial:
    from .core_points import irreducible_factors

    return min((q for q, _ in irreducible_factors(p)), key=lambda q: abs(q(root)))


def axis_collapse_eval(t: float, x: HybridPoint, p: Polynomial, delta: float,
                       strict: bool = False, tol: float = 1e-9) -> HybridPoint:
    t = _coerce_time(t)
    x = resolve(x)
    spec = DiscSpec(p.with_field(x.field), delta)
    if isinstance(x, TrivPoint):
        return x
    if x.extreme or not region_member(x, spec, RegionTag.D):
        return x
    pq = p.with_field(QI_FIELD)
    zi = _axis_root(pq, x.z, tol)
    if zi is None:
        if strict and not region_member(x, spec, RegionTag.N):
            raise OutOfRegion(f"{x!r} is not in N+({p.pretty()}, {delta})", field="point")
        return x
    if t == 0.0:
        return x
    if t < 1.0:
        return ArchPoint(zi, x.t * (1 - t), x.field)
    q = _factor_at(pq, zi)
    out = TrivPoint(q, Fraction(0), irreducibility_flag(q) or "certified")
    return restrict_scalars(out) if x.field is Q else out


def axis_collapse_g(t: float, x: HybridPoint, p: Polynomial, delta: float) -> HybridPoint:
    """Collapse of the axis ev(z_i, s) onto eta_{z_i, 0}; identity on N(p, delta)."""
    return axis_collapse_eval(t, x, p, delta, strict=True)


def axis_collapse_homotopy(p: Polynomial, delta: float) -> Homotopy:
    def ev(t, x):
        return axis_collapse_eval(t, x, p, delta)

    return Homotopy(ev, domain=_lambda_at_most(delta),
                    target=_n_target(p.with_field, delta),
                    name=f"axis[{p.pretty()}]", witness=_projection_witness(ev))


def _lifted_cylinder_eval(t: float, x: HybridPoint, p: Polynomial, delta: float,
                          ctx: LiftContext) -> HybridPoint:
    """The cylinder retraction of D(T, delta) lifted through T -> p(T) (over Q(i))."""
    t = _coerce_time(t)
    x = resolve(x)
    if isinstance(x, TrivPoint) or t == 0.0:
        return x
    spec = DiscSpec(p, delta)
    if not region_member(x, spec, RegionTag.D):
        return x
    if p.degree == 1:
        a = complex(-p.coeffs[0])
        if a == 0:
            return hybrid_cylinder_sdr(t, x, delta)
        base = hybrid_cylinder_sdr(t, ctx.phi(x), delta)
        if isinstance(base, TrivPoint):
            return TrivPoint(p, base.r)
        return ArchPoint(base.center + a, base.t, QI_FIELD)
    base0 = ctx.phi(x)
    try:
        c = g_delta_inverse(base0, delta)
    except OutOfDisc:
        return x
    rho = abs(c.w)
    pr, ph = profile_target(rho, c.s)
    if pr == rho and ph == c.s:
        return x
    phase = c.w / rho if rho > 0 else 1 + 0j

    def center(u):
        r1, h1 = _profile_path(rho, c.s, u)
        if h1 <= 0.0 or r1 == 0.0:
            return 0j
        return g_delta_center(phase * r1, h1, delta)

    def log_mod(u):
        r1, h1 = _profile_path(rho, c.s, u)
        if h1 <= 0.0 or r1 == 0.0:
            return -math.inf
        return g_delta_log_modulus(r1, h1, delta)

    end_mod = log_mod(t)
    if ctx.zero_order[0] and rho > 0 and -math.inf < end_mod < -FLUSH_LOG and \
            not (t == 1.0 and ph == 0.0):
        # the base centre leaves the double range: follow the branch through 0
        # in log-polar form instead of tracking a flushed centre
        if x.extreme or log_mod(0.0) < -FLUSH_LOG:
            near = x.z
        else:
            lo, hi = 0.0, t
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if log_mod(mid) < -FLUSH_LOG:
                    hi = mid
                else:
                    lo = mid
            near = track(ctx, center, 0.0, lo, x.z)
        _, h1 = _profile_path(rho, c.s, t)
        return ctx.extreme_preimage(end_mod, phase, delta * h1, near)
    y = track(ctx, center, 0.0, t, x.z)
    if t == 1.0 and ph == 0.0:
        return ctx.lift_triv(TrivPoint(Polynomial.T(QI_FIELD), Fraction(pr)), y)
    if t == 1.0 and pr == 0.0:
        y = ctx.nearest_root(0j, y)
    _, h1 = _profile_path(rho, c.s, t)
    return ArchPoint(y, delta * h1, QI_FIELD)


def lifted_cylinder_homotopy(p: Polynomial, delta: float, ctx: LiftContext | None = None) -> Homotopy:
    """SDR of D(p, delta) onto N+(p, delta) obtained by lifting (over Q(i))."""
    pq = p.with_field(QI_FIELD)
    ctx = ctx or LiftContext(pq)

    def ev(t, x):
        return _lifted_cylinder_eval(t, x, pq, delta, ctx)

    return Homotopy(ev, domain=_lambda_at_most(delta), target=_nplus_target(pq.with_field, delta),
                    name=f"cyl~[{p.pretty()}]", witness=_projection_witness(ev))


def descend(H: Homotopy, name: str | None = None) -> Homotopy:
    """H' = restrict o H o extend, for H commuting with conjugation (unchecked).

    Points already over Q(i) pass straight through H.
    """

    def lift(x):
        x = resolve(x)
        return extend_scalars(x) if x.field is Q else x

    def down(x, like):
        return restrict_scalars(x) if like.field is Q and resolve(x).field is QI_FIELD else x

    def ev(t, x):
        x = resolve(x)
        return down(H(t, lift(x)), x)

    def lifted_witness(t0, t1, x):
        x = resolve(x)
        return down(H.witness(t0, t1, lift(x)), x)

    witness = lifted_witness if H.witness is not None else None

    return Homotopy(ev, domain=lambda x: H.domain(lift(x)), target=lambda x: H.target(lift(x)),
                    fixed=lambda x: H.fixed(lift(x)), lambda_compatible=H.lambda_compatible,
                    name=name or H.name, witness=witness)


def disc_sdr_homotopy(p: Polynomial, delta: float, target: str = "N",
                      ctx: LiftContext | None = None, check: bool = True) -> Homotopy:
    """SDR of D(p, delta) onto N(p, delta) (or N+ with target="Nplus"),
    extended by the identity outside the disc.  Works over Q and Q(i)."""
    if not p.is_monic():
        raise InputError("disc centre must be monic", field="p")
    if check:
        bound = delta_threshold(p.with_field(QI_FIELD))
        if delta > bound * (1 + 1e-12):
            raise DeltaTooLarge(f"delta={delta} exceeds the threshold {bound:.6g} for {p.pretty()}",
                                field="delta")
    if target not in ("N", "Nplus"):
        raise InputError(f"unknown target {target!r}", field="target")
    H = lifted_cylinder_homotopy(p, delta, ctx)
    if target == "N":
        H = homotopy_compose(axis_collapse_homotopy(p.with_field(QI_FIELD), delta), H)
    out = descend(H, name=f"G[{p.pretty()},{delta:g}]")
    tgt = _n_target(p.with_field, delta) if target == "N" else _nplus_target(p.with_field, delta)
    return Homotopy(out.evaluate, domain=out.domain, target=tgt, fixed=tgt,
                    name=out.name, witness=out.witness)


def disc_sdr_gn(p: Polynomial, delta: float, t: float, x: HybridPoint, target: str = "N") -> HybridPoint:
    return _cached_disc_sdr(p, float(delta), target)(t, x)


@lru_cache(maxsize=256)
def _cached_disc_sdr(p: Polynomial, delta: float, target: str) -> Homotopy:
    return disc_sdr_homotopy(p, delta, target)


# ----------------------------------------------------------- descent to Q

def _default_equivariance_sampler(rng: np.random.Generator):
    t = float(rng.uniform(0, 1))
    if rng.uniform() < 0.2:
        T = Polynomial.T(QI_FIELD)
        return t, TrivPoint(T, Fraction(int(rng.integers(0, 41)), 20))
    z = complex(rng.normal(0, 1), rng.normal(0, 1))
    return t, ArchPoint(z, float(rng.uniform(0.01, 1.0)), QI_FIELD)


def check_equivariance(H: Homotopy, sampler=None, trials: int = 200, tol: float = 1e-9,
                       seed: int = 0):
    """First (t, x) with I(H(t, I(x))) != H(t, x), or None."""
    rng = np.random.default_rng(seed)
    sampler = sampler or _default_equivariance_sampler
    for _ in range(trials):
        t, x = sampler(rng)
        if not H.domain(x):
            continue
        a = conjugate(H(t, conjugate(x)))
        b = H(t, x)
        if not points_close(a, b, tol):
            return t, x
    return None


def real_field_descend(H: Homotopy, sampler=None, trials: int = 200, tol: float = 1e-9,
                       seed: int = 0) -> Homotopy:
    """Descend a conjugation-equivariant homotopy over Q(i) to one over Q."""
    bad = check_equivariance(H, sampler, trials, tol, seed)
    if bad is not None:
        raise NotEquivariant(f"{H.name} is not conjugation-equivariant at t={bad[0]}, x={bad[1]!r}")
    return descend(H)


# ---------------------------------------------------------- global retraction

@dataclass(frozen=True)
class Schedule:
    """p_1..p_N with thresholds Delta_0..Delta_N and radii e_0..e_N.

    Index 0 is the disc at infinity (Delta_0 = 1); Delta_{-1} = e_{-1} = 1.
    """

    field: FieldSpec
    depth: int
    irreducibles: tuple
    thresholds: tuple
    radii: tuple
    disjoint: bool

    @staticmethod
    def build(field: FieldSpec = QI_FIELD, depth: int = 8) -> "Schedule":
        return _build_schedule(field, depth)

    def e(self, n: int) -> float:
        return 1.0 if n < 0 else self.radii[n]

    def p(self, n: int) -> Polynomial:
        return self.irreducibles[n - 1]


@lru_cache(maxsize=16)
def _build_schedule(field: FieldSpec, depth: int) -> Schedule:
    if depth < 0:
        raise InputError("schedule depth must be >= 0", field="depth")
    ps = tuple(enumerate_irreducibles(field, depth)) if depth else ()
    deltas = [1.0] + [delta_threshold(p.with_field(QI_FIELD)) for p in ps]
    radii = []
    running = 1.0
    for n in range(depth + 1):
        running = min(running, deltas[n])
        radii.append(min(2.0 ** (-n - 2), running))
    return Schedule(field, depth, ps, tuple(deltas), tuple(radii),
                    _discs_disjoint(ps, radii))


def _discs_disjoint(ps, radii) -> bool:
    """Numeric check that the scheduled discs (and the disc at infinity) are disjoint.

    The Archimedean part of D(p, e) at level t <= e is {|p(z)| <= t}, inside
    the union of the discs of radius e^{1/deg p} about the roots of p.
    """
    balls = []
    for n, p in enumerate(ps, start=1):
        rad = radii[n] ** (1.0 / p.degree)
        for z in roots_numeric(p.with_field(QI_FIELD)):
            balls.append((n, z, rad))
    for i, (n, z, r) in enumerate(balls):
        if abs(z) + r >= 1.0 / radii[n]:
            return False
        for m, w, s in balls[i + 1:]:
            if m != n and abs(z - w) <= r + s:
                return False
    return True


@lru_cache(maxsize=256)
def _piece_G(field: FieldSpec, depth: int, n: int) -> Homotopy:
    sch = Schedule.build(field, depth)
    if n == 0:
        return infinity_homotopy(sch.e(0))
    return disc_sdr_homotopy(sch.p(n), sch.e(n), "N", check=False)


def piece_K(schedule: Schedule, n: int) -> Homotopy:
    """K_n = G_n <| R_n."""
    R = squeeze_homotopy(schedule.e(n - 1), schedule.e(n))
    G = _piece_G(schedule.field, schedule.depth, n)
    return homotopy_compose(G, R).renamed(f"K_{n}")


def partial_sdr(schedule: Schedule, n: int) -> Homotopy:
    """H_n = K_n <| ... <| K_0."""
    if not 0 <= n <= schedule.depth:
        raise InputError(f"index {n} outside 0..{schedule.depth}", field="n")
    return compose_many([piece_K(schedule, k) for k in range(n + 1)]).renamed(f"H_{n}")


@dataclass(frozen=True)
class GlobalResult:
    point: HybridPoint
    truncated: bool
    index: int | None = None


def _classify_terminal(y: TrivPoint, schedule: Schedule):
    """Branch index of a trivially-valued terminal point, None for eta_{0,1}."""
    if abs(float(y.r) - 1.0) <= EQ_TOL:
        return None
    if y.r > 1:
        return 0
    for n, p in enumerate(schedule.irreducibles, start=1):
        if y.p == p.with_field(y.field):
            return n
    return None


def global_sdr(schedule: Schedule, s: float, x: HybridPoint) -> GlobalResult:
    """The glued retraction of the line onto its trivially-valued fibre.

    On [1 - 2^{-n}, 1 - 2^{-n-1}] the trajectory runs K_n at speed 2^{n+1}
    from y_{n-1} = H_{n-1}(1, x).  Once some y_n is trivially valued every
    later piece fixes it, so it is the exact answer; otherwise pieces beyond
    the schedule depth are missing and the result is flagged as truncated
    (at s = 1 the fallback is eta_{0,1}).
    """
    s = _coerce_time(s)
    x = resolve(x)
    if isinstance(x, TrivPoint) or s == 0.0:
        return GlobalResult(x, False, _classify_terminal(x, schedule) if isinstance(x, TrivPoint) else None)
    if x.field is not schedule.field:
        raise InputError("point and schedule are over different fields", field="field")
    y = x
    for n in range(schedule.depth + 1):
        a = 1.0 - 2.0 ** (-n)
        b = 1.0 - 2.0 ** (-n - 1)
        K = piece_K(schedule, n)
        if s <= b:
            return GlobalResult(K(min(1.0, 2.0 ** (n + 1) * (s - a)), y), False)
        y = K(1.0, y)
        if isinstance(resolve(y), TrivPoint):
            y = resolve(y)
            idx = _classify_terminal(y, schedule)
            if s == 1.0 and idx is None and abs(float(y.r) - 1.0) <= EQ_TOL:
                return GlobalResult(eta01(x.field), False, None)
            return GlobalResult(y, False, idx)
    if s == 1.0:
        return GlobalResult(eta01(x.field), True, None)
    return GlobalResult(y, True, None)


def global_homotopy(schedule: Schedule) -> Homotopy:
    def ev(s, x):
        return global_sdr(schedule, s, x).point

    return Homotopy(ev, target=lambda x: isinstance(resolve(x), TrivPoint),
                    name=f"H[{schedule.depth}]", lambda_compatible=True)


# ---------------------------------------------------------- derived points

def _param_poly(params, key="p"):
    from .serialization import poly_from_json

    return poly_from_json(params[key], params.get("field"))


@register_derived("rz")
def _derived_rz(params, base):
    from .scalars import parse_scalar

    return retraction_rz(parse_scalar(params.get("z", "0")), base)


@register_derived("R")
def _derived_R(params, base):
    return fiber_squeeze_R(float(params["s"]), base, float(params["delta"]), float(params["delta_prime"]))


@register_derived("cyl")
def _derived_cyl(params, base):
    return hybrid_cylinder_sdr(float(params["t"]), base, float(params.get("delta", 1.0)))


@register_derived("infinity")
def _derived_infinity(params, base):
    return infinity_chart(base)


@register_derived("disc")
def _derived_disc(params, base):
    p = _param_poly(params)
    return disc_sdr_gn(p, float(params["delta"]), float(params["t"]), base,
                       params.get("target", "N"))


@register_derived("global")
def _derived_global(params, base):
    sch = Schedule.build(base.field, int(params.get("depth", 8)))
    return global_sdr(sch, float(params["s"]), base).point


__all__ = [
    "profile_target", "punctured_profile_target", "cylinder_sdr_nplus", "cylinder_homotopy",
    "hybrid_cylinder_sdr", "hybrid_cylinder_homotopy", "fiber_squeeze_R", "squeeze_homotopy",
    "retraction_rz", "rz_homotopy", "rz_homotopy_eval", "infinity_chart", "infinity_sdr",
    "infinity_homotopy", "axis_collapse_g", "axis_collapse_homotopy", "lifted_cylinder_homotopy",
    "disc_sdr_homotopy", "disc_sdr_gn", "descend", "check_equivariance", "real_field_descend",
    "Schedule", "piece_K", "partial_sdr", "GlobalResult", "global_sdr", "global_homotopy",
    "LiftContext", "lift_path", "lift_homotopy",
]
