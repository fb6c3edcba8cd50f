"""Spectra of Z and Z[i], the height retraction, and the assembled retraction of the line over Z.

Points of the spectrum (``BasePoint``):

* ``PrimeBranch(p, c)``  a -> c^{ord_p(a)}, c in [0, 1); c = 1 is the trivial norm
* ``Trivial()``          the trivial norm
* ``ArchBranch(rho)``    a -> |sigma(a)|^rho for the (single) embedding sigma

For Z the primes are the positive rational primes and the uniformizer of p
is p itself.  For Z[i] every prime ideal is named by its canonical
generator: the associate with positive real part and nonnegative imaginary
part (1+i, rational primes 3 mod 4, and a+bi, b+ai for p = a^2 + b^2).

Prime-branch and trivial points double as toric base points, with level
1 - c.  Running the toric fibre map J with this level moves c to max(c, t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core_points import ArchPoint, NormValue, TrivPoint, resolve
from .errors import ArchNotAllowed, InputError, UnsupportedPointKind
from .homotopy import Homotopy, homotopy_compose
from .polynomial import Q, QI_FIELD
from .scalars import QI
from .toric import (GaussPoint, ToricDerived, as_number, dimension, in_skeleton0, j_point,
                    q_point, toric_close, toric_eval, toric_probes)

RINGS = ("Z", "Zi")
Number = Fraction | float


def _check_ring(ring: str) -> str:
    if ring not in RINGS:
        raise InputError(f"ring must be Z or Zi, got {ring!r}", field="ring")
    return ring


def _is_rational_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


# ------------------------------------------------------- Gaussian integers

def _as_qi(a) -> QI:
    if isinstance(a, QI):
        return a
    return QI.of(a)


def _is_gaussian_integer(z: QI) -> bool:
    return z.re.denominator == 1 and z.im.denominator == 1


def canonical_associate(z: QI) -> QI:
    """The associate u*z with re > 0 and im >= 0 (z nonzero)."""
    for u in (QI(1), QI(0, 1), QI(-1), QI(0, -1)):
        w = u * z
        if w.re > 0 and w.im >= 0:
            return w
    raise InputError("zero has no canonical associate", field="prime")


def is_gaussian_prime(z: QI) -> bool:
    if not _is_gaussian_integer(z) or not z:
        return False
    n = int(z.abs2())
    if z.re == 0 or z.im == 0:
        m = abs(int(z.re or z.im))
        return _is_rational_prime(m) and m % 4 == 3
    return _is_rational_prime(n)


def canonical_prime(p, ring: str = "Z"):
    """Validate a prime generator and return its canonical form."""
    ring = _check_ring(ring)
    if ring == "Z":
        try:
            n = abs(int(Fraction(str(p)) if not isinstance(p, QI) else p.re))
        except (ValueError, TypeError):
            raise InputError(f"not a prime: {p!r}", field="prime") from None
        if isinstance(p, QI) and p.im:
            raise InputError("Gaussian prime given for the ring Z", field="prime")
        if not _is_rational_prime(n):
            raise InputError(f"{p} is not prime", field="prime")
        return n
    z = _as_qi(p) if not isinstance(p, str) else _parse_gaussian(p)
    if not is_gaussian_prime(z):
        raise InputError(f"{p} is not a Gaussian prime", field="prime")
    return canonical_associate(z)


def _parse_gaussian(text: str) -> QI:
    """'2+i', '1-i', '3', '-2i' (Python's complex literal syntax with i for j)."""
    try:
        z = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise InputError(f"not a Gaussian integer: {text!r}", field="prime") from None
    if z.real != int(z.real) or z.imag != int(z.imag):
        raise InputError(f"not a Gaussian integer: {text!r}", field="prime")
    return QI(int(z.real), int(z.imag))


def gaussian_primes(norm_bound: int) -> list[QI]:
    """Canonical Gaussian primes of norm at most norm_bound, sorted by (norm, im)."""
    out = []
    for a in range(1, math.isqrt(norm_bound) + 1):
        for b in range(0, math.isqrt(max(0, norm_bound - a * a)) + 1):
            z = QI(a, b)
            if is_gaussian_prime(z):
                out.append(z)
    return sorted(out, key=lambda z: (z.abs2(), z.im))


def rational_primes(bound: int) -> list[int]:
    return [n for n in range(2, bound + 1) if _is_rational_prime(n)]


def _ord_gaussian_int(g: QI, pi: QI) -> int:
    n = pi.abs2()
    pc = pi.conj()
    v = 0
    while True:
        w = g * pc
        if w.re % n or w.im % n:
            return v
        g = QI(w.re / n, w.im / n)
        v += 1


def ord_prime(a, prime, ring: str = "Z") -> int:
    """ord_p(a) for a nonzero element of the fraction field."""
    if ring == "Z":
        a = Fraction(a) if not isinstance(a, QI) else _rational_part(a)
        if a == 0:
            raise InputError("ord of 0 is infinite", field="a")
        from .toric import p_adic_order

        return p_adic_order(a, prime)
    z = _as_qi(a)
    if not z:
        raise InputError("ord of 0 is infinite", field="a")
    d = math.lcm(z.re.denominator, z.im.denominator)
    g = QI(z.re * d, z.im * d)
    return _ord_gaussian_int(g, prime) - _ord_gaussian_int(QI(d), prime)


def _rational_part(z: QI) -> Fraction:
    if z.im:
        raise InputError(f"{z} is not in Q", field="a")
    return z.re


# -------------------------------------------------------------- base points

def _num_str(x: Number) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))


@dataclass(frozen=True)
class Trivial:
    ring: str = "Z"

    def __post_init__(self):
        _check_ring(self.ring)

    branch = "trivial"
    level = Fraction(0)
    is_trivial = True

    def abs(self, a) -> Fraction:
        return Fraction(0) if _as_qi(a) == QI(0) else Fraction(1)

    def at_level(self, rho) -> "BasePoint":
        if rho == 0:
            return self
        raise InputError("the trivial norm has no prime to move along", field="rho")

    def to_json(self) -> dict:
        return {"base": {"branch": "trivial", "ring": self.ring}}

    def __repr__(self):
        return "|.|_0"


@dataclass(frozen=True)
class PrimeBranch:
    """|.|_{p,c} = c^{ord_p(.)}; c = 1 is canonicalized to ``Trivial``."""

    prime: Any
    c: Number
    ring: str = "Z"

    def __new__(cls, prime, c, ring: str = "Z"):
        if as_number(c) == 1:
            return Trivial(ring)
        return super().__new__(cls)

    def __post_init__(self):
        c = as_number(self.c)
        if not (0 <= c <= 1):
            raise InputError(f"c={c} outside [0,1]", field="c")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "prime", canonical_prime(self.prime, self.ring))

    branch = "prime"
    is_trivial = False

    @property
    def level(self) -> Number:
        return 1 - self.c

    def at_level(self, rho) -> "BasePoint":
        return PrimeBranch(self.prime, 1 - as_number(rho), self.ring)

    def abs(self, a) -> Number:
        z = _as_qi(a)
        if not z:
            return Fraction(0)
        v = ord_prime(z, self.prime, self.ring)
        if v == 0:
            return Fraction(1)
        if self.c == 0:
            if v < 0:
                raise InputError(f"{a} is not integral at {self.prime}", field="a")
            return Fraction(0)
        if isinstance(self.c, Fraction):
            return self.c ** v
        return float(self.c) ** v

    def to_json(self) -> dict:
        p = self.prime if isinstance(self.prime, int) else str(self.prime)
        return {"base": {"branch": "prime", "ring": self.ring, "p": p, "c": _num_str(self.c)}}

    def __repr__(self):
        return f"|.|_({self.prime}, {_num_str(self.c)})"


@dataclass(frozen=True)
class ArchBranch:
    """a -> |sigma(a)|^rho; sigma is the real embedding of Q or the identity of Q(i)."""

    rho: Number
    ring: str = "Z"

    def __post_init__(self):
        _check_ring(self.ring)
        rho = as_number(self.rho)
        if not (0 < rho <= 1):
            raise InputError(f"rho={rho} outside (0,1]", field="rho")
        object.__setattr__(self, "rho", rho)

    branch = "arch"
    is_trivial = False

    @property
    def sigma(self) -> str:
        return "real" if self.ring == "Z" else "id"

    @property
    def level(self):
        raise ArchNotAllowed("Archimedean base points have no height", field="point")

    def at_level(self, rho):
        raise ArchNotAllowed("Archimedean base points are not moved by the height retraction",
                             field="point")

    def abs(self, a) -> Number:
        z = _as_qi(a)
        if self.ring == "Z":
            _rational_part(z)
        m2 = z.abs2()
        if m2 == 0:
            return Fraction(0)
        if self.rho == 1 and not z.im:
            return abs(z.re)
        return math.exp(0.5 * float(self.rho) * math.log(m2))

    def to_json(self) -> dict:
        return {"base": {"branch": "arch", "ring": self.ring, "rho": _num_str(self.rho)}}

    def __repr__(self):
        return f"|sigma_{self.sigma}|^{_num_str(self.rho)}"


BasePoint = PrimeBranch | Trivial | ArchBranch


def base_point_from_json(data: Any, where: str = "base") -> BasePoint:
    if isinstance(data, dict) and "base" in data and isinstance(data["base"], dict):
        data = data["base"]
    if not isinstance(data, dict):
        raise InputError("base point must be an object", field=where)
    ring = data.get("ring", "Z")
    branch = data.get("branch")
    try:
        if branch == "trivial":
            return Trivial(ring)
        if branch == "prime":
            if "p" not in data or "c" not in data:
                raise InputError("prime branch needs 'p' and 'c'", field=where)
            return PrimeBranch(data["p"], data["c"], ring)
        if branch == "arch":
            return ArchBranch(data.get("rho", 1), ring)
    except InputError as e:
        raise type(e)(str(e), field=f"{where}.{e.field}") from None
    raise InputError(f"unknown branch {branch!r}", field=f"{where}.branch")


def _nv(v: Number) -> NormValue:
    return NormValue.of_fraction(v) if isinstance(v, Fraction) else NormValue(float(v), False)


# -------------------------------------------------------------- operations

def base_eval(a, z: BasePoint) -> NormValue:
    """|a(z)| for a ring element a."""
    return _nv(z.abs(a))


def ht(z: BasePoint) -> NormValue:
    """Product of the uniformizer norms: c on PrimeBranch(p, c), 1 at the trivial norm."""
    if isinstance(z, ArchBranch):
        raise ArchNotAllowed("ht is defined on the trivially normed spectrum", field="point")
    if isinstance(z, Trivial):
        return NormValue.of_fraction(Fraction(1))
    return _nv(z.c)


def r_t(z: BasePoint, t) -> BasePoint:
    """The literal height retraction: |a(r_t(z))| = |a(z)|^{min(1, ht(z)/t)}, r_0 = id.

    On PrimeBranch(p, c) this is PrimeBranch(p, c^{min(1, c/t)}).  At c = 0 the
    exponent is 0 and the limiting value 0^0 = 1 gives the trivial norm.  The
    map fixes exactly the points with ht >= t, but r_1(p, c) = (p, c^c) is not
    the trivial norm, so the family does not end on it.
    """
    t = as_number(t)
    if not (0 <= t <= 1):
        raise InputError(f"time {t} outside [0,1]", field="time")
    if isinstance(z, ArchBranch):
        raise ArchNotAllowed("r_t acts on the trivially normed spectrum", field="point")
    if t == 0 or isinstance(z, Trivial) or z.c >= t:
        return z
    if z.c == 0:
        return Trivial(z.ring)
    e = z.c / t
    c = z.c ** e if isinstance(e, Fraction) and e.denominator == 1 else float(z.c) ** float(e)
    return PrimeBranch(z.prime, c, z.ring)


def height_retraction(z: BasePoint, t) -> BasePoint:
    """PrimeBranch(p, c) -> PrimeBranch(p, max(c, t)).

    Identity at t = 0, the trivial norm at t = 1, and z is fixed exactly when
    ht(z) >= t.  This is the dvr fibre map of the toric construction under
    rho = 1 - c, and it is the base motion used by the assembled retraction.
    """
    t = as_number(t)
    if not (0 <= t <= 1):
        raise InputError(f"time {t} outside [0,1]", field="time")
    if isinstance(z, ArchBranch):
        raise ArchNotAllowed("the height retraction acts on the trivially normed spectrum",
                             field="point")
    if isinstance(z, Trivial) or z.c >= t:
        return z
    return PrimeBranch(z.prime, t, z.ring)


def spectrum_cover_locate(z: BasePoint) -> str:
    """Which piece of the closed cover of M(A, ||.||_A) contains z."""
    if isinstance(z, Trivial):
        return "TrivialOverlap"
    if isinstance(z, ArchBranch):
        return f"Arch({z.sigma})"
    return "NonArch"


def base_close(a: BasePoint, b: BasePoint, tol: float = 1e-9) -> bool:
    if type(a) is not type(b) or a.ring != b.ring:
        return False
    if isinstance(a, Trivial):
        return True
    if isinstance(a, ArchBranch):
        return abs(float(a.rho) - float(b.rho)) <= tol
    return a.prime == b.prime and abs(float(a.c) - float(b.c)) <= tol


def r_t_homotopy() -> Homotopy:
    return Homotopy(lambda t, z: r_t(z, t), domain=lambda z: not isinstance(z, ArchBranch),
                    target=lambda z: isinstance(z, Trivial), name="r_t", close=base_close,
                    witness=lambda t0, t1, z: r_t(z, t1))


def height_homotopy() -> Homotopy:
    return Homotopy(lambda t, z: height_retraction(z, t),
                    domain=lambda z: not isinstance(z, ArchBranch),
                    target=lambda z: isinstance(z, Trivial), name="ht-retraction",
                    close=base_close, witness=lambda t0, t1, z: height_retraction(z, t1))


# ----------------------------------------------------- assembled retraction

def _field_of_ring(ring: str):
    return Q if ring == "Z" else QI_FIELD


def _is_arch(x) -> bool:
    return isinstance(x, ArchPoint)


def _check_point(x, ring: str):
    x = resolve(x) if not isinstance(x, (GaussPoint, ToricDerived)) else x
    if isinstance(x, (ArchPoint, TrivPoint)):
        if x.field is not _field_of_ring(ring):
            raise UnsupportedPointKind(f"point over {x.field.value} on the line over {ring}",
                                       field="point")
        return x
    if isinstance(x, GaussPoint):
        if dimension(x) != 1:
            raise UnsupportedPointKind("the assembled retraction acts on the affine line",
                                       field="point")
        if isinstance(x.base, ArchBranch):
            raise UnsupportedPointKind("Archimedean-branch points are ev points, not Gauss points",
                                       field="point")
        if not isinstance(x.base, (PrimeBranch, Trivial)) or x.base.ring != ring:
            raise UnsupportedPointKind(f"Gauss point over a base outside the spectrum of {ring}",
                                       field="point")
        return x
    if isinstance(x, ToricDerived):
        return x
    raise UnsupportedPointKind(f"unsupported point {x!r}", field="point")


_ASSEMBLED_PROBES = None


def assembled_probes():
    global _ASSEMBLED_PROBES
    if _ASSEMBLED_PROBES is None:
        _ASSEMBLED_PROBES = toric_probes(1, 0)
    return _ASSEMBLED_PROBES


def _assembled_close(a, b, tol):
    if _is_arch(a) != _is_arch(b):
        return False
    return toric_close(a, b, assembled_probes(), tol)


def _stage1_homotopy(ring: str, depth: int) -> Homotopy:
    from .retractions import Schedule, global_sdr

    sch = Schedule.build(_field_of_ring(ring), depth)

    def ev(s, x):
        if _is_arch(x):
            return global_sdr(sch, s, x).point
        return x

    def witness(t0, t1, x):
        return ev(t1, x)

    return Homotopy(ev, target=lambda x: not _is_arch(x), name="arch-stage",
                    close=_assembled_close, witness=witness)


def _stage2_homotopy() -> Homotopy:
    def ev(t, x):
        if t <= 0.5:
            return q_point(_half(2 * t), x)
        return j_point(_half(2 * t - 1), q_point(1, x))

    def target(x):
        return not _is_arch(x) and in_skeleton0(x, assembled_probes())

    return Homotopy(ev, domain=lambda x: not _is_arch(x), target=target,
                    name="toric-stage", close=_assembled_close,
                    witness=lambda t0, t1, x: ev(t1, x))


def _half(t):
    t = as_number(t)
    return min(max(t, 0), 1)


def assembled_homotopy(ring: str = "Z", depth: int = 8) -> Homotopy:
    """Arch branch first (the glued line retraction), then q and J over the spectrum."""
    ring = _check_ring(ring)
    H = homotopy_compose(_stage2_homotopy(), _stage1_homotopy(ring, depth))
    return H.renamed(f"assembled[{ring}]")


def assembled_sdr(s, x, ring: str = "Z", depth: int = 8):
    """Value at time s of the retraction of the line over the ring onto its trivially valued skeleton."""
    x = _check_point(x, ring)
    s = as_number(s)
    if not (0 <= s <= 1):
        raise InputError(f"time {s} outside [0,1]", field="time")
    if s == 0:
        return x
    return _assembled_cached(ring, depth)(s, x)


_CACHE: dict = {}


def _assembled_cached(ring, depth):
    key = (ring, depth)
    if key not in _CACHE:
        _CACHE[key] = assembled_homotopy(ring, depth)
    return _CACHE[key]


def assembled_value(s, x, f, ring: str = "Z", depth: int = 8) -> NormValue:
    from .multipoly import MultiPoly

    if not isinstance(f, MultiPoly):
        f = MultiPoly.from_univariate(f)
    return toric_eval(assembled_sdr(s, x, ring, depth), f)


__all__ = [
    "RINGS", "PrimeBranch", "Trivial", "ArchBranch", "BasePoint", "canonical_prime",
    "canonical_associate", "is_gaussian_prime", "gaussian_primes", "rational_primes",
    "ord_prime", "base_eval", "ht", "r_t", "height_retraction", "spectrum_cover_locate",
    "base_close", "r_t_homotopy", "height_homotopy", "assembled_homotopy", "assembled_sdr",
    "assembled_value", "assembled_probes", "base_point_from_json",
]
