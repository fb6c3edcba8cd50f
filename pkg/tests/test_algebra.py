"""Scalars, univariate and multivariate polynomials, JSON encoding."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from strategies import fields, line_points, polys, scalars, small_fractions
from hybridberk.core_points import (
    DerivedPoint, TrivPoint, irreducible_factors, points_close,
)
from hybridberk.errors import InputError
from hybridberk.multipoly import MultiPoly
from hybridberk.polynomial import QI_FIELD, Q, FieldSpec, Polynomial
from hybridberk.scalars import QI, format_scalar, parse_scalar
from hybridberk.serialization import point_from_json, point_to_json, poly_from_json, poly_to_json

T = Polynomial.T(QI_FIELD)


@given(scalars(), scalars())
def test_gaussian_field_laws(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    if b:
        assert (a / b) * b == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).is_rational()


@given(scalars())
def test_scalar_text_roundtrip(a):
    assert parse_scalar({"re": str(a.re), "im": str(a.im)}) == a
    assert format_scalar(QI(Fraction(1, 2), Fraction(-3, 4))) == "1/2-(3/4)i"


@given(polys(max_degree=3), polys(max_degree=3))
def test_division_identity(f, g):
    if g.is_zero():
        return
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(polys(max_degree=3), st.integers(1, 3))
def test_multiplicity(f, k):
    p = T - QI(1, 1)
    g = f * p ** k
    if f.is_zero():
        return
    assert p.multiplicity_in(g) == p.multiplicity_in(f) + k


@given(polys(Q, max_degree=4))
def test_factorization_matches_sympy(f):
    if f.degree < 1:
        return
    ours = sorted((q.degree, m) for q, m in irreducible_factors(f))
    x = sympy.symbols("x")
    expr = sum(sympy.Rational(c.re.numerator, c.re.denominator) * x ** i for i, c in enumerate(f.coeffs))
    theirs = sorted((sympy.degree(q, x), m) for q, m in sympy.factor_list(expr)[1])
    assert ours == theirs


@given(polys(max_degree=4))
def test_derivative_and_conjugation(f):
    assert f.conj().conj() == f
    assert (f * f).derivative() == 2 * f * f.derivative()


def test_polynomial_pretty():
    assert (T ** 2 - 2).pretty() == "T^2 - 2"
    assert (T + QI(0, 1)).pretty() == "T + i"
    assert FieldSpec.parse("Q") is Q


# ------------------------------------------------------------- multipoly

multi = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_fractions,
                        max_size=5).map(lambda d: MultiPoly(d, 2))


@given(multi, multi, multi)
def test_multipoly_ring_laws(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@given(multi, st.tuples(small_fractions, small_fractions), st.tuples(small_fractions, small_fractions))
def test_shift_is_translation(f, c, pt):
    shifted = f.shift(c)
    assert shifted.evaluate(pt) == f.evaluate((pt[0] + c[0], pt[1] + c[1]))


@given(multi)
def test_multipoly_json_roundtrip(f):
    assert MultiPoly.from_json(f.to_json()) == f


def test_multipoly_rejects_bad_json():
    with pytest.raises(InputError):
        MultiPoly.from_json({"terms": [[[1, 2], "x"]]})


# ----------------------------------------------------------------- JSON

@given(polys(max_degree=4))
def test_poly_json_roundtrip(f):
    assert poly_from_json(poly_to_json(f)) == f


def test_poly_json_over_Q_rejects_gaussian():
    with pytest.raises(InputError):
        poly_from_json([{"re": "1", "im": "1"}], Q)


@given(fields.flatmap(line_points))
def test_point_json_roundtrip(x):
    y = point_from_json(point_to_json(x))
    assert points_close(x, y, 1e-12)
    assert y.field is x.field


def test_derived_point_json():
    data = {"kind": "derived", "op": "rz", "params": {"z": "0"},
            "base": {"kind": "arch", "z": {"re": "2", "im": "0"}, "t": "0.5"}}
    x = point_from_json(data)
    assert isinstance(x, DerivedPoint)
    assert points_close(x, point_from_json({"kind": "arch", "z": {"re": "0.5", "im": "0"}, "t": "0.5"}))


def test_triv_json_canonicalises_large_radius():
    x = point_from_json({"kind": "triv", "p": ["-1", "1"], "r": "3"})
    assert x == TrivPoint(T, Fraction(3))
