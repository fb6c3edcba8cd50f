"""Affine n-space over a non-Archimedean base: the torus retraction q and the fibre map J.

Base rings are the rationals with a p-adic absolute value (``hyb:p``) or the
integers localized at p with the trivial norm (``dvr:p``).  Points of the
base spectrum are parametrized by rho in [0, 1] through ``alpha``:

* ``hyb:p``  rho -> |.|_p^rho
* ``dvr:p``  rho -> |.|_p^{-log(1 - rho)}, which is the residue seminorm at rho = 1

Points of the analytification are modelled by ``GaussPoint`` (a base point,
an exact centre and a polyradius) together with the lazily evaluated images
q(t, x) and J(t, x).  Points of the hybrid line over the trivially valued
rationals (``TrivPoint``) are accepted as one-dimensional points over the
trivial base.

Polynomials in T_1..T_n are ``MultiPoly`` objects with n variables; those on
the torus-extended space carry 2n variables, T first and u second.
"""
from __future__ import annotations

import functools

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

import numpy as np

from .core_points import ArchPoint, NormValue, TrivPoint, seminorm
from .errors import InputError, UnsupportedPointKind
from .multipoly import MultiPoly, binom_multi, exponents_below
from .polynomial import Polynomial

Number = Fraction | float


def p_adic_order(a: Fraction, p: int) -> int:
    """ord_p of a nonzero rational."""
    if a == 0:
        raise ValueError("ord_p(0) is infinite")
    v = 0
    n, d = a.numerator, a.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def as_number(x) -> Number:
    """Fractions stay exact; strings and ints parse exactly; floats stay floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {x!r}") from None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(math.isqrt(p)) + 1))


# ------------------------------------------------------------------ bases

@dataclass(frozen=True)
class BaseRingSpec:
    kind: str  # "hyb" or "dvr"
    prime: int

    def __post_init__(self):
        if self.kind not in ("hyb", "dvr"):
            raise InputError(f"base kind {self.kind!r} is not hyb or dvr", field="base")
        if not _is_prime(self.prime):
            raise InputError(f"{self.prime} is not prime", field="base")

    @staticmethod
    def parse(text: str) -> "BaseRingSpec":
        try:
            kind, p = str(text).split(":")
            return BaseRingSpec(kind.strip(), int(p))
        except ValueError:
            raise InputError(f"base must look like hyb:p or dvr:p, got {text!r}", field="base") from None

    def __str__(self):
        return f"{self.kind}:{self.prime}"


@dataclass(frozen=True)
class ToricBase:
    """The base seminorm alpha(rho) for a ``BaseRingSpec``."""

    spec: BaseRingSpec
    rho: Number

    def __post_init__(self):
        rho = as_number(self.rho)
        if not (0 <= rho <= 1):
            raise InputError(f"rho={rho} outside [0,1]", field="rho")
        object.__setattr__(self, "rho", rho)

    @property
    def level(self) -> Number:
        return self.rho

    @property
    def is_trivial(self) -> bool:
        return self.rho == 0

    def at_level(self, rho: Number) -> "ToricBase":
        return ToricBase(self.spec, rho)

    def abs(self, a) -> Number:
        a = Fraction(a)
        if a == 0:
            return Fraction(0)
        if self.rho == 0:
            return Fraction(1)
        p = self.spec.prime
        v = p_adic_order(a, p)
        if self.spec.kind == "hyb":
            if self.rho == 1:
                return Fraction(1, p ** v) if v >= 0 else Fraction(p ** (-v))
            return float(p) ** (-v * float(self.rho))
        if self.rho == 1:
            if v < 0:
                raise InputError(f"{a} is not integral at {p}; the residue seminorm is undefined",
                                 field="coefficient")
            return Fraction(0) if v > 0 else Fraction(1)
        if v == 0:
            return Fraction(1)
        return math.exp(v * math.log(p) * math.log1p(-float(self.rho)))

    def to_json(self) -> dict:
        return {"base": str(self.spec), "rho": _num_str(self.rho)}

    def __repr__(self):
        return f"alpha({self.spec}, {_num_str(self.rho)})"


class _TrivialBase:
    """The trivial norm, the base of every point of the trivially valued fibre."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    level = Fraction(0)
    is_trivial = True

    def at_level(self, rho):
        if rho != 0:
            raise InputError("the trivial base has no other levels", field="rho")
        return self

    def abs(self, a) -> Fraction:
        return Fraction(0) if Fraction(a) == 0 else Fraction(1)

    def to_json(self) -> dict:
        return {"base": "trivial"}

    def __repr__(self):
        return "trivial"


TRIVIAL_BASE = _TrivialBase()


def alpha(rho, spec: BaseRingSpec | str) -> ToricBase:
    if isinstance(spec, str):
        spec = BaseRingSpec.parse(spec)
    return ToricBase(spec, rho)


def alpha_inv(base) -> Number:
    return base.level


def _num_str(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _nv(v: Number) -> NormValue:
    if isinstance(v, Fraction):
        return NormValue.of_fraction(v)
    return NormValue(float(v), False)


def _pow(r: Number, k: int) -> Number:
    return r ** k if k else (Fraction(1) if isinstance(r, Fraction) else 1.0)


# ------------------------------------------------------------------ points

@dataclass(frozen=True)
class GaussPoint:
    """|f(x)| = max_mu |b_mu|_base r^mu where f(T + c) = sum_mu b_mu T^mu."""

    base: Any
    center: tuple
    radii: tuple

    def __post_init__(self):
        c = tuple(Fraction(as_number(v)) if not isinstance(v, float) else Fraction(v)
                  for v in self.center)
        r = tuple(as_number(v) for v in self.radii)
        if len(c) != len(r) or not c:
            raise InputError("centre and radii must be nonempty and of equal length", field="radii")
        if any(v < 0 for v in r):
            raise InputError("negative radius", field="radii")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radii", r)

    @property
    def n(self) -> int:
        return len(self.center)

    def t_abs(self, i: int) -> Number:
        """|T_i(x)| = max(|c_i|, r_i)."""
        return max(self.base.abs(self.center[i]), self.radii[i])

    def __repr__(self):
        c = ", ".join(str(v) for v in self.center)
        r = ", ".join(_num_str(v) for v in self.radii)
        return f"Gauss({self.base!r}; c=({c}); r=({r}))"


@dataclass(frozen=True)
class ToricDerived:
    """q(t, x) or J(t, x), evaluated on demand."""

    op: str
    t: Number
    base: Any

    def __post_init__(self):
        if self.op not in ("q", "J"):
            raise InputError(f"unknown toric op {self.op!r}", field="op")
        t = as_number(self.t)
        if not (0 <= t <= 1):
            raise InputError(f"time {t} outside [0,1]", field="time")
        object.__setattr__(self, "t", t)

    def __repr__(self):
        return f"{self.op}({_num_str(self.t)}, {self.base!r})"


ToricPoint = GaussPoint | ToricDerived | TrivPoint


def dimension(x) -> int:
    if isinstance(x, GaussPoint):
        return x.n
    if isinstance(x, ToricDerived):
        return dimension(x.base)
    if isinstance(x, (TrivPoint, ArchPoint)):
        return 1
    raise UnsupportedPointKind(f"not a point of affine space: {x!r}", field="point")


def lam(x):
    """The base point lambda(x)."""
    if isinstance(x, GaussPoint):
        return x.base
    if isinstance(x, TrivPoint):
        return TRIVIAL_BASE
    if isinstance(x, ToricDerived):
        b = lam(x.base)
        if x.op == "q":
            return b
        return b.at_level(beta(x.t, x.base))
    if isinstance(x, ArchPoint):
        raise UnsupportedPointKind("Archimedean points have no non-Archimedean base", field="point")
    raise UnsupportedPointKind(f"not a point of affine space: {x!r}", field="point")


def _check_dim(x, f: MultiPoly):
    if f.nvars != dimension(x):
        raise InputError(f"polynomial in {f.nvars} variables at a point of dimension "
                         f"{dimension(x)}", field="f")


def gauss_eval(x: GaussPoint, f: MultiPoly) -> NormValue:
    _check_dim(x, f)
    shifted = f.shift(x.center)
    degs = shifted.degree_vector()
    powers = []
    for r, d in zip(x.radii, degs):
        row = [_pow(r, 0)]
        for _ in range(d):
            row.append(row[-1] * r)
        powers.append(row)
    best: Number = Fraction(0)
    for mu, b in shifted.items():
        v = x.base.abs(b)
        for row, k in zip(powers, mu):
            v = v * row[k]
        if v > best:
            best = v
    return _nv(best)


def toric_eval(x, f: MultiPoly) -> NormValue:
    """|f(x)| for any supported point."""
    if isinstance(x, GaussPoint):
        return gauss_eval(x, f)
    if isinstance(x, (TrivPoint, ArchPoint)):
        _check_dim(x, f)
        return seminorm(x, f.to_univariate())
    if isinstance(x, ToricDerived):
        if x.op == "q":
            if x.t == 0:
                return toric_eval(x.base, f)
            if x.t == 1:
                return toric_eval(q_point(1, x.base), f)
            return q_eval(x.t, x.base, f)
        return toric_eval(resolve_toric(x), f)
    raise UnsupportedPointKind(f"not a point of affine space: {x!r}", field="point")


def monomial_abs(x, i: int) -> Number:
    """|T_i(x)| as an exact number when possible."""
    if isinstance(x, GaussPoint):
        return x.t_abs(i)
    n = dimension(x)
    v = toric_eval(x, MultiPoly.var(i, n))
    return v.fraction if v.exact else v.value


def _point_like(x, base, radii: Sequence[Number]):
    """Centre-0 Gauss point, presented as eta_{T,r} when x lives on the hybrid line."""
    if isinstance(x, TrivPoint) or (isinstance(x, ToricDerived) and _on_line(x)):
        r = radii[0]
        field = _line_field(x)
        return TrivPoint(Polynomial.T(field), r if isinstance(r, Fraction) else Fraction(r))
    return GaussPoint(base, (0,) * len(radii), tuple(radii))


def _line_field(x):
    while isinstance(x, ToricDerived):
        x = x.base
    return x.field


def _on_line(x) -> bool:
    while isinstance(x, ToricDerived):
        x = x.base
    return isinstance(x, TrivPoint)


def resolve_toric(x):
    """A primitive point equal to x wherever a closed form exists (q at t in {0,1}, J)."""
    if not isinstance(x, ToricDerived):
        return x
    if x.op == "q":
        if x.t == 0:
            return resolve_toric(x.base)
        if x.t == 1:
            return q_point(1, resolve_toric(x.base))
        return x
    return j_point(x.t, resolve_toric(x.base))


# ------------------------------------------------------------ m*, F, p, q

def mstar(f: MultiPoly) -> MultiPoly:
    """T_i -> u_i T_i: the coaction of the torus, as a polynomial in (T, u)."""
    n = f.nvars
    return MultiPoly({mu + mu: a for mu, a in f.items()}, 2 * n)


@dataclass(frozen=True)
class ToricExpansion:
    """F(g) = sum_mu F(g)_mu v^mu with coefficients in A[T]."""

    n: int
    coeffs: Mapping[tuple, MultiPoly]

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           {k: v for k, v in sorted(self.coeffs.items()) if not v.is_zero()})

    def __eq__(self, other):
        return (isinstance(other, ToricExpansion) and self.n == other.n
                and dict(self.coeffs) == dict(other.coeffs))

    def __getitem__(self, mu) -> MultiPoly:
        return self.coeffs.get(tuple(mu), MultiPoly({}, self.n))

    def support(self) -> list[tuple]:
        return list(self.coeffs)

    def to_json(self) -> dict:
        return {"n": self.n,
                "coefficients": [[list(mu), c.to_json()] for mu, c in self.coeffs.items()]}


def _split(g: MultiPoly) -> int:
    if g.nvars % 2:
        raise InputError("a polynomial on the torus-extended space has 2n variables", field="g")
    return g.nvars // 2


def f_expansion(g: MultiPoly) -> ToricExpansion:
    """F(g)_mu = sum_nu (nu choose mu) b_nu, where g = sum_nu b_nu u^nu, b_nu in A[T]."""
    n = _split(g)
    acc: dict[tuple, dict] = {}
    for e, a in g.items():
        t_part, nu = e[:n], e[n:]
        for mu in exponents_below(nu):
            c = binom_multi(nu, mu)
            slot = acc.setdefault(mu, {})
            slot[t_part] = slot.get(t_part, Fraction(0)) + c * a
    return ToricExpansion(n, {mu: MultiPoly(terms, n) for mu, terms in acc.items()})


def _time_vector(t, n: int) -> tuple:
    if isinstance(t, (list, tuple)):
        if len(t) != n:
            raise InputError(f"time vector has length {len(t)}, expected {n}", field="time")
        out = tuple(as_number(v) for v in t)
    else:
        out = (as_number(t),) * n
    if any(not (0 <= v <= 1) for v in out):
        raise InputError("times must lie in [0,1]", field="time")
    return out


def p_point_eval(t, x, g: MultiPoly) -> NormValue:
    """|g(p(t, x))| = max_mu |F(g)_mu(x)| t^mu for g in A[T, u]."""
    n = _split(g)
    if n != dimension(x):
        raise InputError("polynomial and point dimensions differ", field="g")
    tv = _time_vector(t, n)
    best: Number = Fraction(0)
    for mu, c in f_expansion(g).coeffs.items():
        v = toric_eval(x, c)
        val = v.fraction if v.exact else v.value
        for ti, k in zip(tv, mu):
            val = val * _pow(ti, k)
        if val > best:
            best = val
    return _nv(best)


@functools.lru_cache(maxsize=512)
def q_coefficients(f: MultiPoly) -> dict[tuple, MultiPoly]:
    """g_nu = sum_mu (mu choose nu) a_mu T^mu for nu up to the degree vector of f."""
    n = f.nvars
    out = {}
    for nu in exponents_below(f.degree_vector()):
        terms = {mu: binom_multi(mu, nu) * a for mu, a in f.items() if binom_multi(mu, nu)}
        if terms:
            out[nu] = MultiPoly(terms, n)
    return out


def q_profile(x, f: MultiPoly) -> list[tuple[int, Number]]:
    """Pairs (|nu|, |g_nu(x)|) with the zero values dropped; q(t) needs only t."""
    _check_dim(x, f)
    out = []
    for nu, g in q_coefficients(f).items():
        v = toric_eval(x, g)
        val = v.fraction if v.exact else v.value
        if val:
            out.append((sum(nu), val))
    return out


def q_from_profile(t, profile: Sequence[tuple[int, Number]]) -> NormValue:
    best: Number = Fraction(0)
    for k, val in profile:
        v = val * _pow(t, k)
        if v > best:
            best = v
    return _nv(best)


def q_eval(t, x, f: MultiPoly) -> NormValue:
    """|f(q(t, x))| = max_nu |g_nu(x)| t^{|nu|}."""
    t = as_number(t)
    if not (0 <= t <= 1):
        raise InputError(f"time {t} outside [0,1]", field="time")
    _check_dim(x, f)
    if t == 0:
        return toric_eval(x, f)
    return q_from_profile(t, q_profile(x, f))


def monomial_max(x, f: MultiPoly) -> NormValue:
    """max_mu |a_mu(lambda(x))| |T^mu(x)|: the value of f on the skeleton point below x."""
    _check_dim(x, f)
    base = lam(x)
    tabs = [monomial_abs(x, i) for i in range(f.nvars)]
    best: Number = Fraction(0)
    for mu, a in f.items():
        v = base.abs(a)
        for r, k in zip(tabs, mu):
            v = v * _pow(r, k)
        if v > best:
            best = v
    return _nv(best)


def q_point(t, x):
    """q(t, x); closed form at t = 1 (centre 0, radii |T_i(x)|)."""
    t = as_number(t)
    if not (0 <= t <= 1):
        raise InputError(f"time {t} outside [0,1]", field="time")
    if t == 0:
        return x
    if t == 1:
        n = dimension(x)
        return _point_like(x, lam(x), [monomial_abs(x, i) for i in range(n)])
    return ToricDerived("q", t, x)


# ------------------------------------------------------ skeleton, beta, J

def _default_toric_probes(n: int) -> list[MultiPoly]:
    return toric_probes(n, 0)


def toric_probes(n: int, seed: int = 0, n_random: int = 6) -> list[MultiPoly]:
    """Small primes, monomials, shifted coordinates, and seeded random polynomials.

    Every probe has integer coefficients, so it is also defined under the
    residue seminorms of a discrete valuation ring.
    """
    out = [MultiPoly.const(c, n) for c in (1, 2, 3, 5, 7)]
    for i in range(n):
        Ti = MultiPoly.var(i, n)
        out += [Ti, Ti ** 2, Ti ** 3]
        out += [Ti - c for c in (1, 2, 3, 5, 6, 9)] + [3 * Ti - 1]
    if n > 1:
        out.append(MultiPoly.var(0, n) * MultiPoly.var(n - 1, n) + 3)
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        terms = {}
        for _ in range(int(rng.integers(1, 5))):
            e = tuple(int(k) for k in rng.integers(0, 3, size=n))
            terms[e] = int(rng.integers(-9, 10))
        f = MultiPoly(terms, n)
        if not f.is_zero():
            out.append(f)
    return out


def skeleton_member(x, probes: Sequence[MultiPoly] | None = None, tol: float = 1e-12) -> bool:
    """Membership in the toric skeleton Z_X.

    Gauss points use the closed form |c_i| <= r_i for every i; other points
    are tested on probes: |f(x)| must equal max_mu |a_mu(x)| |T^mu(x)|.
    """
    if isinstance(x, GaussPoint):
        return all(x.base.abs(c) <= r for c, r in zip(x.center, x.radii))
    n = dimension(x)
    for f in probes or _default_toric_probes(n):
        a, b = toric_eval(x, f), monomial_max(x, f)
        if not a.same(b, tol):
            return False
    return True


def beta(t, x) -> Number:
    """min(1 - t, alpha^{-1}(lambda(x)))."""
    t = as_number(t)
    if not (0 <= t <= 1):
        raise InputError(f"time {t} outside [0,1]", field="time")
    return min(1 - t, lam(x).level)


def j_point(t, x):
    """J(t, x): |f| = max_mu |a_mu(alpha(beta(t, x)))| |T^mu(x)|.

    The result is the centre-0 Gauss point with radii |T_i(x)| over the base
    at level beta(t, x); on Z_{X,0} (trivial base) it is the identity.
    """
    b = beta(t, x)
    base = lam(x)
    if isinstance(x, TrivPoint) and skeleton_member(x):
        return x
    n = dimension(x)
    return _point_like(x, base.at_level(b), [monomial_abs(x, i) for i in range(n)])


def j_eval(t, x, f: MultiPoly) -> NormValue:
    """The defining formula of J, evaluated directly (independent of the closed form)."""
    b = beta(t, x)
    base = lam(x).at_level(b)
    tabs = [monomial_abs(x, i) for i in range(f.nvars)]
    best: Number = Fraction(0)
    for mu, a in f.items():
        v = base.abs(a)
        for r, k in zip(tabs, mu):
            v = v * _pow(r, k)
        if v > best:
            best = v
    return _nv(best)


def in_skeleton0(x, probes=None, tol: float = 1e-12) -> bool:
    """Z_{X,0}: skeleton points over the trivial base."""
    return lam(x).is_trivial and skeleton_member(x, probes, tol)


def toric_close(a, b, probes: Sequence[MultiPoly] | None = None, tol: float = 1e-9) -> bool:
    n = dimension(a)
    if dimension(b) != n:
        return False
    return all(toric_eval(a, f).same(toric_eval(b, f), tol)
               for f in probes or _default_toric_probes(n))


# --------------------------------------------------------------- homotopies

def q_homotopy(probes=None):
    from .homotopy import Homotopy

    def close(a, b, tol):
        return toric_close(a, b, probes, tol)

    return Homotopy(lambda t, x: q_point(t, x), target=lambda x: skeleton_member(x, probes),
                    name="q", close=close,
                    witness=lambda t0, t1, x: q_point(t1, x) if t0 < t1 else x)


def j_homotopy(probes=None):
    from .homotopy import Homotopy

    def close(a, b, tol):
        return toric_close(a, b, probes, tol)

    return Homotopy(lambda t, x: j_point(t, x), domain=lambda x: skeleton_member(x, probes),
                    target=lambda x: in_skeleton0(x, probes), name="J", close=close,
                    witness=lambda t0, t1, x: j_point(t1, x))


# ----------------------------------------------------------- serialization

def base_from_json(data, rho=None, where: str = "point.base"):
    if isinstance(data, str):
        if data == "trivial":
            return TRIVIAL_BASE
        return ToricBase(BaseRingSpec.parse(data), as_number(rho if rho is not None else 1))
    if isinstance(data, dict):
        from .dedekind import base_point_from_json

        return base_point_from_json(data, where)
    raise InputError("unrecognised base", field=where)


def toric_point_from_json(data: Any, where: str = "point"):
    from .serialization import point_from_json

    if not isinstance(data, dict):
        raise InputError("point must be a JSON object", field=where)
    kind = data.get("kind")
    if kind == "gauss":
        base = base_from_json(data.get("base", "trivial"), data.get("rho"), f"{where}.base")
        for key in ("center", "radii"):
            if not isinstance(data.get(key), list):
                raise InputError(f"missing list {key!r}", field=f"{where}.{key}")
        try:
            return GaussPoint(base, tuple(data["center"]), tuple(data["radii"]))
        except InputError as e:
            raise InputError(str(e), field=f"{where}.{e.field or 'center'}") from None
    if kind == "toric-derived":
        return ToricDerived(data.get("op"), data.get("t", 0),
                            toric_point_from_json(data.get("base"), f"{where}.base"))
    return point_from_json(data, where)


def toric_point_to_json(x) -> dict:
    from .serialization import point_to_json

    if isinstance(x, GaussPoint):
        out = {"kind": "gauss"}
        out.update(x.base.to_json())
        out["center"] = [str(c) for c in x.center]
        out["radii"] = [_num_str(r) for r in x.radii]
        return out
    if isinstance(x, ToricDerived):
        return {"kind": "toric-derived", "op": x.op, "t": _num_str(x.t),
                "base": toric_point_to_json(x.base)}
    return point_to_json(x)


__all__ = [
    "BaseRingSpec", "ToricBase", "TRIVIAL_BASE", "alpha", "alpha_inv", "p_adic_order",
    "GaussPoint", "ToricDerived", "ToricExpansion", "dimension", "lam", "gauss_eval",
    "toric_eval", "resolve_toric", "mstar", "f_expansion", "p_point_eval", "q_coefficients",
    "q_profile", "q_from_profile", "q_eval", "q_point", "monomial_max", "skeleton_member",
    "beta", "j_point", "j_eval", "in_skeleton0", "toric_close", "toric_probes", "q_homotopy",
    "j_homotopy", "toric_point_from_json", "toric_point_to_json", "base_from_json",
]
