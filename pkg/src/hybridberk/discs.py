"""Hybrid closed discs, their boundary pieces, and cylinder coordinates.

A disc D(p, delta) is cut out by |p(x)| <= chi(lambda(x)) and lambda(x) <= delta,
with chi(t) = t^t.  Its trivially-valued part is the closed branch
[eta_{p,0}, eta_{p,1}].  g_delta identifies the disc around T with the solid
cylinder {|w| <= 1} x [0, 1], the s = 0 layer going to the branch of T.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core_points import (ArchPoint, HybridPoint, TrivPoint, lambda_of, resolve,
                          seminorm)
from .errors import BadEpsilon, NotSquarefree, OutOfDisc, UnsupportedTag
from .polynomial import Q, QI_FIELD, FieldSpec, Polynomial
from .rootfinding import critical_values, roots_numeric

EQ_TOL = 1e-9


def chi(t: float) -> float:
    if t < 0:
        raise ValueError("chi is defined for t >= 0")
    return 1.0 if t == 0 else t ** t


class Infinity:
    """Symbolic centre of the disc at infinity."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinity"


INFINITY = Infinity()


@dataclass(frozen=True)
class DiscSpec:
    p: Polynomial | Infinity
    delta: float = 1.0

    def __post_init__(self):
        if not (0 < self.delta <= 1):
            raise ValueError(f"delta={self.delta} outside (0,1]")
        if self.p is not INFINITY and not self.p.is_monic():
            raise ValueError("disc centre polynomial must be monic")

    @property
    def at_infinity(self) -> bool:
        return self.p is INFINITY


class RegionTag(enum.Enum):
    D = "D"
    C = "C"
    E = "E"
    N = "N"
    NPLUS = "Nplus"
    TRIV_SEGMENT = "TrivSegment"


@dataclass(frozen=True)
class CylinderCoord:
    w: complex
    s: float

    def __post_init__(self):
        from .errors import OutOfCylinder

        w = complex(self.w)
        if abs(w) > 1 + 1e-12 or not (0 <= self.s <= 1):
            raise OutOfCylinder(f"({w}, {self.s}) outside the unit cylinder")
        if abs(w) > 1:
            w = w / abs(w)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "s", float(self.s))

    @property
    def radius(self) -> float:
        return abs(self.w)


# ----------------------------------------------------------- membership

def _triv_in_branch(x: TrivPoint, p: Polynomial, tol: float) -> bool:
    """x in the closed trivially-valued part [eta_{p,0}, eta_{p,1}] of D(p)."""
    if abs(x.r - 1) <= tol:
        return True
    if x.r > 1:
        return False
    return x.p.divides(p)


def _is_eta01(x: TrivPoint, tol: float) -> bool:
    return abs(float(x.r) - 1.0) <= tol


def region_member(x: HybridPoint, spec: DiscSpec, tag: RegionTag, tol: float = EQ_TOL) -> bool:
    x = resolve(x)
    if spec.at_infinity:
        return _member_infinity(x, spec, tag, tol)
    p = spec.p
    if isinstance(x, TrivPoint):
        if tag in (RegionTag.C, RegionTag.E):
            return _is_eta01(x, tol)
        return _triv_in_branch(x, p, tol)
    lam = x.t
    if tag is RegionTag.TRIV_SEGMENT:
        return False
    if lam > spec.delta + tol:
        return False
    val = seminorm(x, p).value
    bound = chi(lam)
    in_d = val <= bound + tol
    on_c = abs(val - bound) <= tol
    if tag is RegionTag.D:
        return in_d
    if tag is RegionTag.C:
        return on_c
    if tag is RegionTag.E:
        return on_c or (in_d and abs(lam - spec.delta) <= tol)
    if tag is RegionTag.N:
        return on_c
    if tag is RegionTag.NPLUS:
        return on_c or (not x.extreme and p.abs_at(x.z) <= tol)
    raise UnsupportedTag(str(tag))


def _member_infinity(x, spec: DiscSpec, tag: RegionTag, tol: float) -> bool:
    if tag is RegionTag.NPLUS:
        raise UnsupportedTag("N+ is not defined for the disc at infinity", field="tag")
    if isinstance(x, TrivPoint):
        if tag in (RegionTag.C, RegionTag.E):
            return _is_eta01(x, tol)
        return x.r >= 1 or _is_eta01(x, tol)
    if tag is RegionTag.TRIV_SEGMENT:
        return False
    lam = x.t
    if lam > spec.delta + tol:
        return False
    val = math.exp(lam * x.log_abs) if x.log_abs > -math.inf else 0.0
    bound = 1.0 / chi(lam)
    in_d = val >= bound - tol
    on_c = abs(val - bound) <= tol
    if tag is RegionTag.D:
        return in_d
    if tag in (RegionTag.C, RegionTag.N):
        return on_c
    if tag is RegionTag.E:
        return on_c or (in_d and abs(lam - spec.delta) <= tol)
    raise UnsupportedTag(str(tag))


def in_open_disc(x: HybridPoint, p: Polynomial, delta: float) -> bool:
    """Strict version: lambda <= delta and |p(x)| < chi(lambda) (Arch points only)."""
    x = resolve(x)
    if isinstance(x, TrivPoint):
        return x.r < 1 and x.p.divides(p)
    return x.t <= delta and seminorm(x, p).value < chi(x.t)


def basic_neighbourhood_member(x: HybridPoint, p: Polynomial, r: float, eps: float,
                               spec: DiscSpec) -> bool:
    if not (0 < eps < min(r, spec.delta)):
        raise BadEpsilon(f"epsilon={eps} must lie in (0, min(r, delta))", field="eps")
    if not region_member(x, spec, RegionTag.D):
        return False
    v = seminorm(x, p).value
    return r - eps < v < r + eps and lambda_of(x) < eps


# ----------------------------------------------------- cylinder coordinates

def g_delta(c: CylinderCoord, delta: float, field: FieldSpec = QI_FIELD) -> HybridPoint:
    """(w, 0) -> eta_{T,|w|};  (w, s) -> ev(w delta s |w|^{1/(delta s) - 1}, delta s)."""
    if c.s == 0:
        return TrivPoint(Polynomial.T(field), Fraction(abs(c.w)))
    t = delta * c.s
    if c.w == 0:
        return ArchPoint(0j, t, field)
    return ArchPoint.polar(g_delta_log_modulus(abs(c.w), c.s, delta), c.w, t, field)


def g_delta_log_modulus(rho: float, s: float, delta: float) -> float:
    """log of |w delta s |w|^{1/(delta s) - 1}| = log(delta s) + log(rho) / (delta s)."""
    t = delta * s
    return math.log(t) + math.log(rho) / t


def g_delta_center(w: complex, s: float, delta: float) -> complex:
    """The centre of g_delta(w, s) as a double (flushes to 0 on underflow)."""
    if w == 0:
        return 0j
    L = g_delta_log_modulus(abs(w), s, delta)
    return w / abs(w) * math.exp(L) if L > -745 else 0j


def g_delta_inverse(x: HybridPoint, delta: float, tol: float = 1e-12) -> CylinderCoord:
    x = resolve(x)
    if isinstance(x, TrivPoint):
        if x.r <= 1 and (x.r == 1 or x.p == Polynomial.T(x.field)):
            return CylinderCoord(complex(float(x.r)), 0.0)
        raise OutOfDisc(f"{x!r} is not in the disc around T", field="point")
    t = x.t
    L = x.log_abs
    if t > delta * (1 + tol) or L > math.log(t) + 1e-9:
        raise OutOfDisc(f"{x!r} is not in D(T, {delta})", field="point")
    if L == -math.inf:
        w = 0j
    else:
        # |w| = t^{-t} |z|^t, arg w = arg z
        phase = x.z / abs(x.z)
        w = phase * math.exp(min(0.0, t * (L - math.log(t))))
    s = min(1.0, t / delta)
    if x.field is Q and w.imag < 0:
        w = w.conjugate()
    return CylinderCoord(w, s)


# ---------------------------------------------------------- Delta threshold

def delta_threshold(p: Polynomial) -> float:
    """Radius below which D(p, delta) contains no critical point of p.

    min(1, half the root-to-critical-point distance, half the smallest
    critical value modulus).  The last term is what actually keeps critical
    points out of the disc: for T^2 - 1/16 the distance term alone gives 1/8
    while the critical value at 0 has modulus 1/16.
    """
    if not p.is_squarefree():
        raise NotSquarefree(f"{p.pretty()} is not squarefree", field="p")
    dp = p.derivative()
    if dp.degree < 1:
        return 1.0
    roots = roots_numeric(p)
    crit = roots_numeric(dp)
    dist = min(abs(a - b) for a in roots for b in crit)
    cvals = min(abs(v) for v in critical_values(p))
    return min(1.0, dist / 2, cvals / 2)


__all__ = [
    "chi", "DiscSpec", "RegionTag", "CylinderCoord", "INFINITY", "region_member",
    "basic_neighbourhood_member", "g_delta", "g_delta_inverse", "g_delta_center",
    "delta_threshold", "roots_numeric", "in_open_disc",
]
