"""Points of the hybrid affine line over Q and Q(i) and their seminorms.

Three kinds of point:

* ``ArchPoint``  ev(z, t):  |f| = |f(z)|^t, 0 < t <= 1
* ``TrivPoint``  eta_{p, r}: |f| = max_i |a_i|_0 r^i, Taylor coefficients about a root of p
* ``DerivedPoint``: the image of a base point under a named map, evaluated lazily
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator, Mapping, Union

import numpy as np

from .errors import (InputError, NotFlaggedIrreducible, NotMonic,
                     UnsupportedPointKind, WrongField)
from .polynomial import Q, QI_FIELD, FieldSpec, Polynomial
from .rootfinding import roots_numeric
from .scalars import QI

ZERO_TOL = 1e-12
# centres with |log|z|| beyond this are kept in log-polar form
LOG_RANGE = 700.0
CERTIFIED = "certified"
ASSUMED = "assumed"


@dataclass(frozen=True)
class NormValue:
    """A seminorm value.  ``exact`` values also carry the rational ``fraction``."""

    value: float
    exact: bool
    fraction: Fraction | None = None

    @staticmethod
    def of_fraction(x: Fraction) -> "NormValue":
        return NormValue(float(x), True, x)

    @property
    def label(self) -> str:
        return "exact" if self.exact else "exact-input approx-eval"

    def same(self, other: "NormValue", tol: float = 1e-9) -> bool:
        if self.exact and other.exact:
            return self.fraction == other.fraction
        return abs(self.value - other.value) <= tol * max(1.0, self.value, other.value)

    def __float__(self):
        return self.value

    def __str__(self):
        return f"{format_value(self.value)} {self.label}"


def format_value(v: float) -> str:
    return f"{v:.12g}"


def to_fraction(r) -> Fraction:
    if isinstance(r, Fraction):
        return r
    if isinstance(r, (int, float)):
        return Fraction(r)
    return Fraction(str(r))


# ----------------------------------------------------------------- points

@dataclass(frozen=True)
class ArchPoint:
    """ev(z, t).

    Centres whose modulus leaves the double range (they occur near the
    trivially-valued fibre, where the modulus behaves like rho^(1/t)) are
    stored in log-polar form: ``z`` is then the unit phase and the modulus
    is exp(log_modulus).  In range, ``log_modulus`` is always None.
    """

    z: complex
    t: float
    field: FieldSpec = QI_FIELD
    log_modulus: float | None = None

    def __post_init__(self):
        z = complex(self.z)
        t = float(self.t)
        if not (0.0 < t <= 1.0) or not math.isfinite(t):
            raise InputError(f"fiber parameter t={t} outside (0,1]", field="t")
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InputError("non-finite Archimedean center", field="z")
        lm = self.log_modulus
        if lm is not None:
            lm = float(lm)
            if not math.isfinite(lm):
                raise InputError("non-finite log modulus", field="log_modulus")
            z = z / abs(z) if z != 0 else 1 + 0j
            if -LOG_RANGE <= lm <= LOG_RANGE:
                z = z * math.exp(lm)
                lm = None
        if self.field is Q and z.imag < 0:
            z = z.conjugate()
        if z.imag == 0:
            z = complex(z.real, 0.0)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "log_modulus", lm)

    @staticmethod
    def polar(log_mod: float, phase: complex, t: float, field: FieldSpec = QI_FIELD) -> "ArchPoint":
        """ev(e^{log_mod} * phase, t) for a unit (or any nonzero) phase."""
        return ArchPoint(phase, t, field, log_mod)

    @property
    def extreme(self) -> bool:
        return self.log_modulus is not None

    @property
    def log_abs(self) -> float:
        """log |z| (may be -inf for z = 0)."""
        if self.log_modulus is not None:
            return self.log_modulus
        return math.log(abs(self.z)) if self.z != 0 else -math.inf

    @property
    def center(self) -> complex:
        """The centre as a double (flushes to 0 or inf for extreme points)."""
        if self.log_modulus is None:
            return self.z
        return self.z * (0.0 if self.log_modulus < 0 else math.inf)

    def __repr__(self):
        if self.log_modulus is not None:
            return f"ev(exp({self.log_modulus:.6g})*{self.z:.6g}, {self.t:.6g})"
        return f"ev({self.z:.6g}, {self.t:.6g})"


@dataclass(frozen=True)
class TrivPoint:
    p: Polynomial
    r: Fraction
    irr: str = CERTIFIED

    def __post_init__(self):
        r = to_fraction(self.r)
        if r < 0:
            raise InputError("negative radius", field="r")
        if not self.p.is_monic() or self.p.degree < 1:
            raise NotMonic(f"{self.p.pretty()} is not monic of positive degree", field="p")
        if self.irr not in (CERTIFIED, ASSUMED):
            raise NotFlaggedIrreducible(f"irreducibility flag {self.irr!r}", field="irr")
        p = self.p
        irr = self.irr
        if r >= 1 and p != Polynomial.T(p.field):
            p = Polynomial.T(p.field)
            irr = CERTIFIED
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "irr", irr)

    @property
    def field(self) -> FieldSpec:
        return self.p.field

    def __repr__(self):
        return f"eta({self.p.pretty()}, {float(self.r):.6g})"


@dataclass(frozen=True)
class DerivedPoint:
    op: str
    params: Mapping[str, Any]
    base: "HybridPoint"

    @property
    def field(self) -> FieldSpec:
        f = self.params.get("field")
        if f is None:
            return self.base.field
        return f if isinstance(f, FieldSpec) else FieldSpec.parse(f)

    def __hash__(self):
        return hash((self.op, repr(sorted(self.params.items())), self.base))

    def resolve(self) -> "HybridPoint":
        return resolve(self)


HybridPoint = Union[ArchPoint, TrivPoint, DerivedPoint]

# op-tag -> (resolver to a primitive point, lambda rule)
_DERIVED_OPS: dict[str, Callable[[Mapping, "HybridPoint"], "HybridPoint"]] = {}


def register_derived(op: str):
    def deco(fn):
        _DERIVED_OPS[op] = fn
        return fn
    return deco


def resolve(x: HybridPoint) -> HybridPoint:
    """Primitive point equal to x (recursively evaluating derived points)."""
    while isinstance(x, DerivedPoint):
        fn = _DERIVED_OPS.get(x.op)
        if fn is None:
            raise UnsupportedPointKind(f"unknown derived op {x.op!r}", field="op")
        x = fn(x.params, resolve(x.base))
    return x


def eta01(field: FieldSpec = Q) -> TrivPoint:
    return TrivPoint(Polynomial.T(field), Fraction(1))


# ----------------------------------------------------------- evaluation

def _check_field(f: Polynomial, field: FieldSpec):
    if not field.contains(f.field):
        raise WrongField("polynomial over Q(i) evaluated at a point over Q", field="f")


def eval_archimedean(f: Polynomial, x: ArchPoint) -> NormValue:
    _check_field(f, x.field)
    if f.is_zero():
        return NormValue(0.0, False)
    if x.log_modulus is not None:
        return _eval_extreme(f, x)
    a = f.abs_at(x.z)
    if a < ZERO_TOL * (1.0 + f.scale_at(x.z)):
        return NormValue(0.0, False)
    if x.t == 1.0:
        return NormValue(a, False)
    return NormValue(math.exp(x.t * math.log(a)), False)


def _eval_extreme(f: Polynomial, x: ArchPoint) -> NormValue:
    """|f(z)|^t when |z| is far outside the double range: the dominant
    monomial (top one for huge z, lowest one for tiny z) decides the value to
    full precision, since the other terms are smaller by factors of e^{-700}."""
    cs = f.complex_coeffs
    L = x.log_modulus
    if L > 0:
        k = len(cs) - 1
    else:
        k = next(i for i, c in enumerate(cs) if c != 0)
    return NormValue(math.exp(x.t * (math.log(abs(cs[k])) + k * L)), False)


def eval_trivial(f: Polynomial, x: TrivPoint) -> NormValue:
    if not x.p.is_monic():
        raise NotMonic("center polynomial not monic", field="p")
    if x.irr not in (CERTIFIED, ASSUMED):
        raise NotFlaggedIrreducible("center polynomial not flagged", field="irr")
    _check_field(f, x.field)
    if f.is_zero():
        return NormValue.of_fraction(Fraction(0))
    r = x.r
    if r > 1:
        return NormValue.of_fraction(r ** f.degree)
    v = x.p.multiplicity_in(f)
    return NormValue.of_fraction(r ** v if v else Fraction(1))


def seminorm(x: HybridPoint, f: Polynomial) -> NormValue:
    if isinstance(x, ArchPoint):
        return eval_archimedean(f, x)
    if isinstance(x, TrivPoint):
        return eval_trivial(f, x)
    if isinstance(x, DerivedPoint):
        return seminorm(resolve(x), f)
    raise UnsupportedPointKind(f"not a hybrid point: {x!r}")


def lambda_of(x: HybridPoint) -> float:
    if isinstance(x, ArchPoint):
        return x.t
    if isinstance(x, TrivPoint):
        return 0.0
    return lambda_of(resolve(x))


def is_triv(x: HybridPoint) -> bool:
    return isinstance(resolve(x), TrivPoint)


# ---------------------------------------------------------- conjugation

def conjugate(x: HybridPoint) -> HybridPoint:
    """The involution I: ev(z,t) -> ev(conj z, t), eta_{p,r} -> eta_{iota p, r}."""
    if x.field is not QI_FIELD:
        raise WrongField("conjugation acts on points over Q(i)", field="field")
    x = resolve(x)
    if isinstance(x, ArchPoint):
        return ArchPoint(x.z.conjugate(), x.t, QI_FIELD, x.log_modulus)
    return TrivPoint(x.p.conj(), x.r, x.irr)


def restrict_scalars(x: HybridPoint) -> HybridPoint:
    if x.field is not QI_FIELD:
        raise WrongField("restriction of scalars starts from Q(i)", field="field")
    x = resolve(x)
    if isinstance(x, ArchPoint):
        return ArchPoint(x.z, x.t, Q, x.log_modulus)
    p = x.p
    if not p.is_rational():
        p = p * p.conj()
    return TrivPoint(p.with_field(Q), x.r, x.irr)


def extend_scalars(x: HybridPoint) -> HybridPoint:
    """Some preimage of x under restrict_scalars (the choice is immaterial for
    conjugation-equivariant maps)."""
    x = resolve(x)
    if x.field is QI_FIELD:
        return x
    if isinstance(x, ArchPoint):
        return ArchPoint(x.z, x.t, QI_FIELD, x.log_modulus)
    if x.r >= 1:
        return TrivPoint(Polynomial.T(QI_FIELD), x.r)
    q = irreducible_factors(x.p.with_field(QI_FIELD))[0][0]
    return TrivPoint(q, x.r, irreducibility_flag(q))


# ------------------------------------------------------ irreducibility

def _gauss_round_candidates(w: complex, gaussian: bool):
    re = (math.floor(w.real), math.ceil(w.real))
    im = (math.floor(w.imag), math.ceil(w.imag)) if gaussian else (0,)
    return {QI(a, b) for a in re for b in im}


def has_root_in_field(p: Polynomial) -> bool:
    """Exact test for a root of p in its field (rational root theorem over Z or Z[i])."""
    if p.degree < 1:
        return False
    if not p.coeffs[0]:
        return True
    den, _ = p._integer_form
    lead = p.lead * den  # leading coefficient of the integral multiple
    gaussian = p.field is QI_FIELD
    if not gaussian and p.degree == 2:
        b, c = p.coeffs[1].re / p.lead.re, p.coeffs[0].re / p.lead.re
        disc = b * b - 4 * c
        return disc >= 0 and _is_square(disc.numerator) and _is_square(disc.denominator)
    lead_c = complex(lead)
    for r in roots_numeric(p, tol=1e-8):
        if not gaussian and abs(r.imag) > 1e-6 * (1 + abs(r)):
            continue
        for cand in _gauss_round_candidates(lead_c * r, gaussian):
            if not p.eval_exact(cand / lead):
                return True
    return False


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def irreducibility_flag(p: Polynomial) -> str | None:
    """'certified' (deg <= 3 and no root), 'assumed' (deg >= 4, squarefree, no
    root) or None when p is visibly reducible."""
    if p.degree < 1:
        return None
    if p.degree == 1:
        return CERTIFIED
    if has_root_in_field(p):
        return None
    if p.degree <= 3:
        return CERTIFIED
    if not p.is_squarefree():
        return None
    return ASSUMED


@lru_cache(maxsize=4096)
def irreducible_factors(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors over p's field with multiplicities (exact, via sympy)."""
    import sympy

    T = sympy.Symbol("T")
    expr = 0
    for i, c in enumerate(p.coeffs):
        expr += (sympy.Rational(c.re.numerator, c.re.denominator)
                 + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * T ** i
    if p.field is QI_FIELD:
        _, facs = sympy.factor_list(sympy.expand(expr), T, gaussian=True)
    else:
        _, facs = sympy.factor_list(sympy.expand(expr), T)
    out = []
    for fac, mult in facs:
        coeffs = sympy.Poly(fac, T).all_coeffs()[::-1]
        q = Polynomial([_sympy_to_qi(c) for c in coeffs], p.field).monic()
        out.append((q, mult))
    out.sort(key=lambda qm: (qm[0].degree, _lex_key(qm[0])))
    return out


def _sympy_to_qi(c) -> QI:
    import sympy

    re, im = sympy.re(c), sympy.im(c)
    return QI(Fraction(int(sympy.numer(re)), int(sympy.denom(re))),
              Fraction(int(sympy.numer(im)), int(sympy.denom(im))))


def _scalar_key(c: QI):
    return (c.height(), abs(c.re) + abs(c.im), c.re < 0, c.im < 0, abs(c.re), abs(c.im))


def _lex_key(p: Polynomial):
    return tuple(_scalar_key(c) for c in reversed(p.coeffs[:-1]))


# --------------------------------------------------------- enumeration

def _scalars_of_height(h: int, gaussian: bool) -> list[QI]:
    """All scalars of height <= h (height = max |num|, den over real/imag parts)."""
    parts = {Fraction(0)}
    for den in range(1, h + 1):
        for num in range(-h, h + 1):
            if num and math.gcd(num, den) == 1:
                parts.add(Fraction(num, den))
    parts = sorted(parts)
    if not gaussian:
        return [QI(a) for a in parts]
    return [QI(a, b) for a in parts for b in parts]


def _enumeration_key(p: Polynomial):
    h = p.height()
    return (p.degree + h, p.degree, h, _lex_key(p))


def _iter_irreducibles(field: FieldSpec) -> Iterator[tuple[Polynomial, str]]:
    gaussian = field is QI_FIELD
    found: list[Polynomial] = []
    weight = 2
    while True:
        batch = []
        for d in range(1, weight):
            h = weight - d
            pool = _scalars_of_height(h, gaussian)
            for tail in itertools.product(pool, repeat=d):
                if max(c.height() for c in tail + (QI(1),)) != h:
                    continue
                p = Polynomial(list(tail) + [QI(1)], field)
                flag = irreducibility_flag(p)
                if flag is None:
                    continue
                if flag == ASSUMED and any(q.degree <= d // 2 and q.divides(p) for q in found):
                    continue
                batch.append((p, flag))
        batch.sort(key=lambda pf: _enumeration_key(pf[0]))
        for p, flag in batch:
            found.append(p)
            yield p, flag
        weight += 1


_ENUM_CACHE: dict[FieldSpec, tuple[list, Iterator]] = {}


def enumerate_irreducibles(field: FieldSpec, count: int) -> list[Polynomial]:
    """First ``count`` monic irreducibles in (degree + height, degree, height, lex) order."""
    return [p for p, _ in enumerate_irreducibles_flagged(field, count)]


def enumerate_irreducibles_flagged(field: FieldSpec, count: int) -> list[tuple[Polynomial, str]]:
    if count < 1:
        raise InputError("count must be >= 1", field="count")
    cache, it = _ENUM_CACHE.setdefault(field, ([], _iter_irreducibles(field)))
    while len(cache) < count:
        cache.append(next(it))
    return list(cache[:count])


# ------------------------------------------------------------- probes

@dataclass(frozen=True)
class ProbeFamily:
    """Monomials T^0..T^max_degree plus seeded random polynomials."""

    field: FieldSpec = QI_FIELD
    seed: int = 0
    n_random: int = 8
    max_degree: int = 8
    polys: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        rng = np.random.default_rng(self.seed)
        out = [Polynomial([0] * k + [1], self.field) for k in range(self.max_degree + 1)]
        gaussian = self.field is QI_FIELD
        for _ in range(self.n_random):
            deg = int(rng.integers(1, 5))
            cs = []
            for _ in range(deg + 1):
                re = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4)))
                im = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3))) if gaussian else 0
                cs.append(QI(re, im))
            cs[-1] = QI(1) if not cs[-1] else cs[-1]
            out.append(Polynomial(cs, self.field))
        object.__setattr__(self, "polys", tuple(out))

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


@lru_cache(maxsize=16)
def default_probes(field: FieldSpec = QI_FIELD, seed: int = 0) -> ProbeFamily:
    return ProbeFamily(field, seed)


def probe_values(x: HybridPoint, probes: ProbeFamily | None = None) -> list[NormValue]:
    x = resolve(x)
    probes = probes or default_probes(x.field)
    return [seminorm(x, f) for f in probes]


def points_close(a: HybridPoint, b: HybridPoint, tol: float = 1e-9,
                 probes: ProbeFamily | None = None) -> bool:
    """Extensional equality: agreement on a probe family within relative tol."""
    a, b = resolve(a), resolve(b)
    if probes is None:
        field = QI_FIELD if (a.field is QI_FIELD and b.field is QI_FIELD) else Q
        probes = default_probes(field)
    return all(seminorm(a, f).same(seminorm(b, f), tol) for f in probes)


def probe_distance(a: HybridPoint, b: HybridPoint, probes: ProbeFamily | None = None) -> float:
    """max over probes of |va - vb| / max(1, va, vb)."""
    a, b = resolve(a), resolve(b)
    if probes is None:
        field = QI_FIELD if (a.field is QI_FIELD and b.field is QI_FIELD) else Q
        probes = default_probes(field)
    worst = 0.0
    for f in probes:
        va, vb = seminorm(a, f).value, seminorm(b, f).value
        worst = max(worst, abs(va - vb) / max(1.0, va, vb))
    return worst
