"""Exact scalars for Q and Q(i).

Every coefficient is stored as a :class:`QI` (a pair of Fractions).  Rational
numbers are simply the ones with zero imaginary part, so a single type serves
both fields and the field tag lives on the polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union["QI", Fraction, int]


class QI:
    """Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def of(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return QI(Fraction(x))
        if isinstance(x, complex):
            return QI(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return QI(Fraction(x))
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {x!r} to an exact scalar")

    def __add__(self, o):
        o = QI.of(o)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = QI.of(o)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return QI.of(o) - self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __mul__(self, o):
        o = QI.of(o)
        if not self.im and not o.im:
            return QI(self.re * o.re)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QI.of(o)
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero scalar")
            return QI(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return QI((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, o):
        return QI.of(o) / self

    def __pow__(self, k: int):
        out = QI(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        try:
            o = QI.of(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def is_rational(self) -> bool:
        return not self.im

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def height(self) -> int:
        """max |num|, |den| over both parts; used by the enumeration order."""
        h = 0
        for part in (self.re, self.im):
            h = max(h, abs(part.numerator), part.denominator if part else 0)
        return h

    def __repr__(self):
        if not self.im:
            return f"QI({self.re})"
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


def parse_scalar(text) -> QI:
    """Parse 'a/b', a decimal, or a dict {'re':..,'im':..}."""
    if isinstance(text, dict):
        return QI(_frac(text.get("re", "0")), _frac(text.get("im", "0")))
    if isinstance(text, (int, Fraction)):
        return QI(text)
    return QI(_frac(text))


def _frac(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(str(s).strip())


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x: QI) -> str:
    """'1/2', 'i', '-2i', '1+i', '1/2-(3/4)i'."""
    if not x.im:
        return format_fraction(x.re)
    im = x.im
    mag = abs(im)
    if mag == 1:
        body = "i"
    elif mag.denominator == 1:
        body = f"{mag.numerator}i"
    else:
        body = f"({mag.numerator}/{mag.denominator})i"
    if not x.re:
        return body if im > 0 else "-" + body
    return f"{_short(x.re)}{'+' if im > 0 else '-'}{body}"


def _short(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
