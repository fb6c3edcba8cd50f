"""Exact multivariate polynomials with rational coefficients.

A ``MultiPoly`` in ``nvars`` variables is a mapping from exponent tuples to
nonzero ``Fraction`` coefficients.  The toric code uses two layouts: n
variables T_1..T_n, and 2n variables (T_1..T_n, u_1..u_n) for polynomials on
the torus-extended space.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError
from .polynomial import Q, Polynomial

Exponent = tuple[int, ...]


def binom_multi(mu: Sequence[int], nu: Sequence[int]) -> int:
    """Product of binomials (mu_i choose nu_i); zero when some nu_i > mu_i."""
    out = 1
    for m, n in zip(mu, nu):
        if n > m:
            return 0
        out *= comb(m, n)
    return out


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    try:
        return Fraction(str(c).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {c!r}") from None


class MultiPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]],
                 nvars: int):
        if nvars < 0:
            raise InputError("negative number of variables", field="nvars")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != nvars or any(k < 0 for k in e):
                raise InputError(f"exponent {e} does not fit {nvars} variables", field="exp")
            acc[e] = acc.get(e, Fraction(0)) + _frac(c)
        self.nvars = nvars
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict, nvars: int) -> "MultiPoly":
        """Skip validation for terms produced internally (valid exponents, Fraction values)."""
        out = cls.__new__(cls)
        out.nvars = nvars
        out._terms = {e: c for e, c in terms.items() if c != 0}
        out._hash = None
        return out

    # ---------------------------------------------------------- builders

    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "MultiPoly":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def from_univariate(cls, p: Polynomial) -> "MultiPoly":
        if not p.is_rational():
            raise InputError("only polynomials over Q embed in the toric ring", field="f")
        return cls({(i,): c.re for i, c in enumerate(p.coeffs) if c}, 1)

    # ------------------------------------------------------------ access

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def degree_vector(self) -> Exponent:
        out = [0] * self.nvars
        for e in self._terms:
            out = [max(a, b) for a, b in zip(out, e)]
        return tuple(out)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # -------------------------------------------------------- arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise InputError(f"variable count mismatch ({self.nvars} vs {other.nvars})")
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        return MultiPoly(itertools.chain(self._terms.items(), other._terms.items()), self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(acc, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative power of a polynomial")
        out = MultiPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # ------------------------------------------------------ substitutions

    def shift(self, center: Sequence) -> "MultiPoly":
        """f(T + c): the Taylor expansion of f about c."""
        c = [_frac(x) for x in center]
        if len(c) != self.nvars:
            raise InputError("centre length does not match the variable count", field="center")
        if all(x == 0 for x in c):
            return self
        # (T_i + c_i)^k = sum_j table[i][k][j] T_i^j, built once per variable and degree
        degs = self.degree_vector()
        table = []
        for ci, d in zip(c, degs):
            powers = [Fraction(1)]
            for _ in range(d):
                powers.append(powers[-1] * ci)
            table.append([[comb(k, j) * powers[k - j] for j in range(k + 1)] for k in range(d + 1)])
        acc: dict[Exponent, Fraction] = {}
        for e, a in self._terms.items():
            partial = {(): a}
            for i, k in enumerate(e):
                row = table[i][k]
                nxt = {}
                for pre, val in partial.items():
                    for j, w in enumerate(row):
                        if w:
                            nxt[pre + (j,)] = val * w
                partial = nxt
            for key, val in partial.items():
                acc[key] = acc.get(key, 0) + val
        return MultiPoly._trusted(acc, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [_frac(x) for x in point]
        total = Fraction(0)
        for e, a in self._terms.items():
            term = a
            for x, k in zip(pt, e):
                term *= x ** k
            total += term
        return total

    def to_univariate(self) -> Polynomial:
        if self.nvars != 1:
            raise InputError("expected a polynomial in one variable", field="f")
        deg = self.total_degree()
        return Polynomial([self.coeff((i,)) for i in range(deg + 1)], Q)

    # ------------------------------------------------------------ output

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = ["T"] if self.nvars == 1 else [f"T{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.pretty()})"

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "terms": [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in self.items()]}

    @classmethod
    def from_json(cls, data, nvars: int | None = None, where: str = "f") -> "MultiPoly":
        """``{"nvars": n, "terms": [[exp, coeff], ...]}`` or a univariate coefficient list."""
        if isinstance(data, list):
            try:
                return cls({(i,): _frac(c) for i, c in enumerate(data)}, 1)
            except InputError as e:
                raise InputError(str(e), field=where) from None
        if not isinstance(data, dict) or "terms" not in data:
            raise InputError("polynomial needs a 'terms' list", field=where)
        terms = data["terms"]
        n = data.get("nvars", nvars)
        if n is None:
            n = len(terms[0][0]) if terms else 1
        out = []
        for i, item in enumerate(terms):
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], list)):
                raise InputError("term must be [exponents, coefficient]", field=f"{where}.terms[{i}]")
            try:
                out.append((tuple(item[0]), _frac(item[1])))
            except (InputError, TypeError, ValueError):
                raise InputError(f"bad term {item!r}", field=f"{where}.terms[{i}]") from None
        try:
            return cls(out, int(n))
        except InputError as e:
            raise InputError(str(e), field=where) from None


def exponents_below(bound: Sequence[int]) -> Iterator[Exponent]:
    """All exponent vectors nu with 0 <= nu_i <= bound_i."""
    return itertools.product(*(range(b + 1) for b in bound))


__all__ = ["MultiPoly", "binom_multi", "exponents_below"]
