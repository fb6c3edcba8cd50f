"""Path and homotopy lifting through the branched cover phi_p: ev(y,t) -> ev(p(y),t).

Away from critical values phi_p is a local homeomorphism, so a base path
lifts uniquely once a starting preimage is chosen.  The lift is computed by
predictor-corrector continuation of the root of p(Y) - b(tau): a tangent
(linear) predictor, damped Newton corrector, and step halving.  Steps are
also capped at half the distance from b to the nearest critical value,
which keeps the corrector on the right branch.  Within ``exclusion_radius``
of a critical value the branch is chosen as the nearest root instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .core_points import (ArchPoint, HybridPoint, TrivPoint, irreducibility_flag,
                          irreducible_factors, resolve)
from .errors import InputError, SeedMismatch, StepCollapse
from .polynomial import QI_FIELD, Polynomial
from .rootfinding import critical_values


@dataclass(frozen=True)
class LiftContext:
    p: Polynomial
    initial_step: float = 1.0 / 32
    max_step: float = 1.0 / 16
    min_step: float = 1e-12
    corrector_tol: float = 1e-13
    exclusion_radius: float = 1e-9

    def __post_init__(self):
        if not self.corrector_tol < self.exclusion_radius:
            raise InputError("corrector tolerance must be below the exclusion radius")
        if self.p.degree < 1:
            raise InputError("cover polynomial must have positive degree", field="p")

    @cached_property
    def coeffs(self) -> tuple[complex, ...]:
        return self.p.complex_coeffs

    @cached_property
    def crit_values(self) -> tuple[complex, ...]:
        return tuple(critical_values(self.p))

    @cached_property
    def zero_order(self) -> tuple[int, complex]:
        """(v, u0) with p = T^v u(T), u(0) = u0 != 0; v = 0 when p(0) != 0."""
        for v, c in enumerate(self.coeffs):
            if c != 0:
                return v, c
        raise InputError("zero cover polynomial", field="p")

    def extreme_image(self, x: ArchPoint) -> ArchPoint:
        """phi(x) for a centre outside the double range, from the dominant term of p."""
        if x.log_modulus < 0:
            v, u0 = self.zero_order
            if v == 0:
                return ArchPoint(self.coeffs[0], x.t, QI_FIELD)
        else:
            v, u0 = self.p.degree, self.coeffs[-1]
        phase = x.z ** v * u0 / abs(u0)
        return ArchPoint.polar(v * x.log_modulus + math.log(abs(u0)), phase, x.t, QI_FIELD)

    def extreme_preimage(self, log_mod: float, phase: complex, t: float,
                         near: complex) -> ArchPoint:
        """The point y near 0 with y^v u0 = b, b = e^log_mod phase, on the branch through near."""
        v, u0 = self.zero_order
        if v == 0:
            raise InputError("no branch of the cover through 0", field="p")
        arg = np.angle(phase / u0)
        cands = [np.exp(1j * (arg + 2 * math.pi * k) / v) for k in range(v)]
        ref = near / abs(near) if near != 0 else 1 + 0j
        best = min(cands, key=lambda w: abs(w - ref))
        return ArchPoint.polar((log_mod - math.log(abs(u0))) / v, complex(best), t, QI_FIELD)

    @cached_property
    def factors(self) -> list[tuple[Polynomial, int]]:
        return irreducible_factors(self.p.with_field(QI_FIELD))

    def phi(self, x: HybridPoint) -> HybridPoint:
        """Image of a point under the cover (Archimedean points and eta_{q,r})."""
        x = resolve(x)
        if isinstance(x, ArchPoint):
            if x.extreme:
                return self.extreme_image(x)
            return ArchPoint(self.p(x.center), x.t, QI_FIELD)
        if x.r >= 1:
            return TrivPoint(Polynomial.T(QI_FIELD), x.r ** self.p.degree)
        v = x.p.multiplicity_in(self.p)
        return TrivPoint(Polynomial.T(QI_FIELD), x.r ** v if v else Fraction(1))

    def cv_distance(self, b: complex) -> float:
        return min((abs(b - c) for c in self.crit_values), default=math.inf)

    def _eval(self, y: complex):
        p = 0j
        dp = 0j
        for c in reversed(self.coeffs):
            dp = dp * y + p
            p = p * y + c
        return p, dp

    def nearest_root(self, b: complex, y: complex) -> complex:
        cs = list(self.coeffs)
        cs[0] -= b
        rts = np.roots(cs[::-1])
        return complex(min(rts, key=lambda r: abs(r - y)))

    def lift_triv(self, base: TrivPoint, y_near: complex) -> TrivPoint:
        """Preimage of eta_{T,r} on the branch of the root nearest y_near."""
        if base.p != Polynomial.T(base.field):
            raise InputError("only eta_{0,r} endpoints are lifted", field="point")
        r = base.r
        if r >= 1:
            root = 1 / Fraction(self.p.degree)
            return TrivPoint(Polynomial.T(QI_FIELD), _frac_pow(r, root))
        best = min(self.factors, key=lambda qm: abs(qm[0](y_near)))
        q, v = best
        return TrivPoint(q, _frac_pow(r, Fraction(1, v)), irreducibility_flag(q) or "certified")


def _frac_pow(r: Fraction, e: Fraction) -> Fraction:
    if e == 1 or r in (0, 1):
        return r
    return Fraction(float(r) ** float(e))


def track(ctx: LiftContext, center: Callable[[float], complex], tau0: float, tau1: float,
          y0: complex, max_step: float | None = None) -> complex:
    """Continue the root y of p(Y) = center(tau) from tau0 to tau1."""
    if tau1 <= tau0:
        return y0
    hmax = max_step or ctx.max_step
    y = y0
    tau = tau0
    b = center(tau0)
    h = min(ctx.initial_step, hmax)
    while tau < tau1:
        h = min(h, hmax)
        tn = tau1 if tau1 - tau <= h * (1 + 1e-12) else tau + h
        bn = center(tn)
        if bn == b:
            tau = tn
            h *= 2
            continue
        dist_b = ctx.cv_distance(b)
        if dist_b <= ctx.exclusion_radius or ctx.cv_distance(bn) <= ctx.exclusion_radius:
            y = ctx.nearest_root(bn, y)
            tau, b = tn, bn
            continue
        ok = abs(bn - b) <= 0.5 * dist_b
        if ok:
            _, dp = ctx._eval(y)
            if dp == 0:
                ok = False
            else:
                yp = y + (bn - b) / dp
                yn = yp
                ok = False
                for _ in range(12):
                    pv, dpv = ctx._eval(yn)
                    if dpv == 0:
                        break
                    step = (pv - bn) / dpv
                    yn -= step
                    if abs(step) <= ctx.corrector_tol * (1 + abs(yn)):
                        ok = True
                        break
                if ok and abs(yn - yp) > 0.5 * abs(yp - y) + 1e-13 * (1 + abs(y)):
                    ok = False
        if ok:
            y, tau, b = yn, tn, bn
            h *= 2
        else:
            h /= 2
            if h < ctx.min_step:
                raise StepCollapse(f"step below {ctx.min_step} at tau={tau} (base {b})")
    return y


def lift_path(ctx: LiftContext, gamma: Sequence[HybridPoint], y0: HybridPoint,
              frozen: Callable[[HybridPoint], bool] | None = None) -> list[HybridPoint]:
    """Lift a sampled base path, linearly interpolating the centre between samples.

    The lift freezes once the base enters F (``frozen``; default: the
    trivially-valued fibre or a critical value).
    """
    gamma = [resolve(g) for g in gamma]
    y0 = resolve(y0)
    if not gamma:
        return []
    if frozen is None:
        def frozen(g):
            return isinstance(g, TrivPoint) or ctx.cv_distance(g.z) <= ctx.exclusion_radius
    g0 = gamma[0]
    if isinstance(y0, TrivPoint) or isinstance(g0, TrivPoint):
        if ctx.phi(y0) != g0:
            raise SeedMismatch("seed does not map to the start of the path")
        return [y0] * len(gamma)
    if abs(ctx.p(y0.z) - g0.z) > 1e-6 * (1 + abs(g0.z)) or abs(y0.t - g0.t) > 1e-12:
        raise SeedMismatch(f"phi(y0) = ev({ctx.p(y0.z)}, {y0.t}) differs from gamma(0) = {g0!r}")
    out = [y0]
    y = y0.z
    stopped = frozen(g0)
    for a, b in zip(gamma, gamma[1:]):
        if stopped:
            out.append(out[-1])
            continue
        if isinstance(b, TrivPoint):
            out.append(ctx.lift_triv(b, y))
            stopped = True
            continue
        za, zb = a.z, b.z
        y = track(ctx, lambda s: za + s * (zb - za), 0.0, 1.0, y)
        out.append(ArchPoint(y, b.t, QI_FIELD))
        stopped = frozen(b)
    return out


def lift_trajectory(ctx: LiftContext, base_center: Callable[[float], complex | None],
                    base_lambda: Callable[[float], float], y0: complex,
                    base_end: Callable[[float], HybridPoint], tau: float,
                    max_step: float | None = None, triv_from: float | None = None) -> HybridPoint:
    """H~(tau, x) for a base trajectory given in closed form.

    ``base_center(s)`` is the Archimedean centre for s < triv_from; at
    s >= triv_from (if given) the base sits in the trivially-valued fibre and
    ``base_end(s)`` gives that point.
    """
    if triv_from is not None and tau >= triv_from:
        s_pre = triv_from * (1 - 1e-9) if triv_from > 0 else 0.0
        y = track(ctx, base_center, 0.0, s_pre, y0, max_step)
        return ctx.lift_triv(base_end(tau), y)
    y = track(ctx, base_center, 0.0, tau, y0, max_step)
    return ArchPoint(y, base_lambda(tau), QI_FIELD)


def lift_homotopy(ctx: LiftContext, H, x: HybridPoint, max_step: float | None = None):
    """Trajectory tau -> H~(tau, x) lifting s -> H(s, phi_p(x)).

    Generic version: the base path is sampled through H itself.  Entry into
    the trivially-valued fibre is located by bisection.
    """
    x = resolve(x)
    bx = ctx.phi(x)
    if isinstance(x, TrivPoint) or H.fixed(bx):
        return lambda tau: x

    def base(s):
        return resolve(H(s, bx))

    def center(s):
        b = base(s)
        return b.z if isinstance(b, ArchPoint) else 0j

    def traj(tau):
        b = base(tau)
        if isinstance(b, ArchPoint):
            y = track(ctx, center, 0.0, tau, x.z, max_step)
            return ArchPoint(y, b.t, QI_FIELD)
        lo, hi = 0.0, tau
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if isinstance(base(mid), ArchPoint):
                lo = mid
            else:
                hi = mid
        y = track(ctx, center, 0.0, lo, x.z, max_step)
        return ctx.lift_triv(base(hi), y)

    return traj
