"""Dense univariate polynomials with exact Q / Q(i) coefficients."""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import WrongField
from .scalars import QI, parse_scalar


class FieldSpec(enum.Enum):
    RATIONALS = "Q"
    GAUSSIAN_RATIONALS = "Qi"

    def contains(self, other: "FieldSpec") -> bool:
        return self is FieldSpec.GAUSSIAN_RATIONALS or other is FieldSpec.RATIONALS

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        t = str(text).strip().lower()
        if t in ("q", "rationals", "qq"):
            return FieldSpec.RATIONALS
        if t in ("qi", "q(i)", "gaussianrationals", "gaussian", "zi"):
            return FieldSpec.GAUSSIAN_RATIONALS
        raise WrongField(f"unknown field {text!r}", field="field")


Q = FieldSpec.RATIONALS
QI_FIELD = FieldSpec.GAUSSIAN_RATIONALS


class Polynomial:
    """Coefficients lowest degree first, trailing zeros stripped."""

    __slots__ = ("coeffs", "field", "__dict__")

    def __init__(self, coeffs: Iterable, field: FieldSpec | None = None):
        cs = [QI.of(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[QI, ...] = tuple(cs)
        if field is None:
            field = Q if all(c.is_rational() for c in cs) else QI_FIELD
        elif field is Q and any(not c.is_rational() for c in cs):
            raise WrongField("non-rational coefficient in a polynomial over Q", field="p")
        self.field = field

    # constructors
    @classmethod
    def T(cls, field: FieldSpec = Q) -> "Polynomial":
        return cls([0, 1], field)

    @classmethod
    def const(cls, c, field: FieldSpec = Q) -> "Polynomial":
        return cls([c], field)

    @classmethod
    def linear_root(cls, z, field: FieldSpec | None = None) -> "Polynomial":
        z = QI.of(z)
        if field is None:
            field = Q if z.is_rational() else QI_FIELD
        return cls([-z, 1], field)

    @classmethod
    def parse(cls, items: Sequence, field: FieldSpec | None = None) -> "Polynomial":
        return cls([parse_scalar(c) for c in items], field)

    # basic structure
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> QI:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def with_field(self, field: FieldSpec) -> "Polynomial":
        return Polynomial(self.coeffs, field)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        inv = QI(1) / self.lead
        return Polynomial([c * inv for c in self.coeffs], self.field)

    def _join(self, other: "Polynomial") -> FieldSpec:
        return QI_FIELD if QI_FIELD in (self.field, other.field) else Q

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other, self.field)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (QI(0),) * (n - len(self.coeffs))
        b = other.coeffs + (QI(0),) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-_as_poly(other, self.field))

    def __rsub__(self, other):
        return _as_poly(other, self.field) - self

    def __mul__(self, other):
        other = _as_poly(other, self.field)
        if not self.coeffs or not other.coeffs:
            return Polynomial([], self._join(other))
        out = [QI(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Polynomial(out, self._join(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1], self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self._join(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([], field), Polynomial(rem, field)
        quot = [QI(0)] * (dq + 1)
        inv = QI(1) / other.lead
        m = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + m - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quot, field), Polynomial(rem[: m - 1], field)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return other.divmod(self)[1].is_zero()

    def multiplicity_in(self, f: "Polynomial") -> int:
        """Largest v with self**v | f (f nonzero, self of positive degree)."""
        if f.is_zero():
            raise ValueError("multiplicity in the zero polynomial is infinite")
        v = 0
        while f.degree >= self.degree:
            q, r = f.divmod(self)
            if not r.is_zero():
                break
            f, v = q, v + 1
        return v

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Polynomial":
        return Polynomial([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def conj(self) -> "Polynomial":
        """Coefficient conjugation (the involution iota on k[T])."""
        return Polynomial([c.conj() for c in self.coeffs], self.field)

    def compose(self, g: "Polynomial") -> "Polynomial":
        out = Polynomial([], self._join(g))
        for c in reversed(self.coeffs):
            out = out * g + Polynomial([c], out.field)
        return out

    def reversed_monic(self) -> "Polynomial":
        """Monic polynomial whose roots are the inverses of ours (needs p(0) != 0)."""
        return Polynomial(list(reversed(self.coeffs)), self.field).monic()

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return True
        return self.gcd(self.derivative()).degree == 0

    def eval_exact(self, z) -> QI:
        z = QI.of(z)
        acc = QI(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in self.complex_coeffs[::-1]:
            acc = acc * z + c
        return acc

    @cached_property
    def complex_coeffs(self) -> tuple[complex, ...]:
        return tuple(complex(c) for c in self.coeffs)

    @cached_property
    def _integer_form(self):
        """(D, [(a_i, b_i)]) with coefficient_i = (a_i + b_i i) / D, all integers."""
        den = 1
        for c in self.coeffs:
            den = math.lcm(den, c.re.denominator, c.im.denominator)
        ints = [(int(c.re * den), int(c.im * den)) for c in self.coeffs]
        return den, ints

    def abs_at(self, z: complex) -> float:
        """|f(z)| for a double z, evaluated exactly and rounded once at the end."""
        if not self.coeffs:
            return 0.0
        x, y = Fraction(z.real), Fraction(z.imag)
        m = math.lcm(x.denominator, y.denominator)
        X, Y = int(x * m), int(y * m)
        den, ints = self._integer_form
        d = len(ints) - 1
        ar, ai = ints[-1]
        mp = 1
        for i in range(d - 1, -1, -1):
            mp *= m
            ar, ai = ar * X - ai * Y, ar * Y + ai * X
            br, bi = ints[i]
            ar += br * mp
            ai += bi * mp
        num = ar * ar + ai * ai
        if not num:
            return 0.0
        return math.sqrt(Fraction(num, den * den * m ** (2 * d)))

    def scale_at(self, z: complex) -> float:
        """sum |a_i| |z|^i; the natural size of rounding error in f(z)."""
        r = abs(z)
        return sum(abs(c) * r ** i for i, c in enumerate(self.complex_coeffs))

    def height(self) -> int:
        return max((c.height() for c in self.coeffs), default=0)

    # equality / display
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.pretty()})"

    def pretty(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if c.im:
                cs = str(c) if (not c.re and not mon) else f"({c})"
            elif c.re == 1 and i:
                cs = ""
            elif c.re == -1 and i:
                cs = "-"
            else:
                cs = str(c.re)
            sep = "*" if cs and cs != "-" and mon else ""
            terms.append(f"{cs}{sep}{mon}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if c.im:
                out.append({"re": f"{c.re.numerator}/{c.re.denominator}",
                            "im": f"{c.im.numerator}/{c.im.denominator}"})
            else:
                out.append(f"{c.re.numerator}/{c.re.denominator}")
        return out


def _as_poly(x, field: FieldSpec) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    q = QI.of(x)
    return Polynomial([q], field if q.is_rational() else QI_FIELD)
