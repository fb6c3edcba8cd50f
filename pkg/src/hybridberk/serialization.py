"""JSON encoding of points and polynomials.

Points::

    {"kind": "arch", "z": {"re": "0.5", "im": "0"}, "t": "0.5"}
    {"kind": "triv", "p": ["-2/1", "0/1", "1/1"], "r": "1/2", "irr": "certified"}
    {"kind": "derived", "op": "rz", "params": {"z": "0"}, "base": {...}}

An optional ``"field": "Q" | "Qi"`` key selects the scalar field (default
Qi).  Arch points with a centre outside the double range carry
``"log_modulus"`` and a unit-modulus ``z``.  Polynomials are coefficient
arrays, lowest degree first, of "num/den" strings or {"re", "im"} objects.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core_points import ArchPoint, DerivedPoint, HybridPoint, TrivPoint
from .errors import InputError
from .polynomial import QI_FIELD, FieldSpec, Polynomial
from .scalars import parse_scalar


def _field_of(data: dict, default: FieldSpec = QI_FIELD) -> FieldSpec:
    if "field" in data and data["field"] is not None:
        return FieldSpec.parse(data["field"])
    return default


def _number(data: dict, key: str, where: str) -> Fraction:
    if key not in data:
        raise InputError(f"missing {key!r}", field=f"{where}.{key}")
    try:
        v = data[key]
        if isinstance(v, dict):
            raise ValueError
        return Fraction(str(v).strip()) if not isinstance(v, (int, float)) else Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {data[key]!r}", field=f"{where}.{key}") from None


def poly_from_json(data: Any, field: FieldSpec | str | None = None, where: str = "poly") -> Polynomial:
    if isinstance(field, str):
        field = FieldSpec.parse(field)
    if isinstance(data, dict):
        if "coeffs" not in data:
            raise InputError("polynomial object needs 'coeffs'", field=f"{where}.coeffs")
        field = _field_of(data, field) if "field" in data else field
        data = data["coeffs"]
    if not isinstance(data, list):
        raise InputError("polynomial must be a coefficient array", field=where)
    coeffs = []
    for i, c in enumerate(data):
        try:
            coeffs.append(parse_scalar(c))
        except (ValueError, ZeroDivisionError, TypeError):
            raise InputError(f"bad coefficient {c!r}", field=f"{where}[{i}]") from None
    field = field or QI_FIELD
    if field is not QI_FIELD and any(not c.is_rational() for c in coeffs):
        raise InputError("Gaussian coefficient in a polynomial over Q", field=where)
    return Polynomial(coeffs, field)


def poly_to_json(p: Polynomial) -> list:
    return p.to_json()


def point_from_json(data: Any, where: str = "point") -> HybridPoint:
    if not isinstance(data, dict):
        raise InputError("point must be a JSON object", field=where)
    kind = data.get("kind")
    field = _field_of(data)
    if kind == "arch":
        z = data.get("z")
        if z is None:
            raise InputError("missing 'z'", field=f"{where}.z")
        if isinstance(z, dict):
            re = _number(z, "re", f"{where}.z") if "re" in z else Fraction(0)
            im = _number(z, "im", f"{where}.z") if "im" in z else Fraction(0)
            zc = complex(float(re), float(im))
        else:
            zc = complex(float(_number(data, "z", where)))
        t = float(_number(data, "t", where))
        lm = data.get("log_modulus")
        try:
            return ArchPoint(zc, t, field, None if lm is None else float(lm))
        except InputError as e:
            raise InputError(str(e), field=f"{where}.{e.field}") from None
    if kind == "triv":
        p = poly_from_json(data.get("p"), field, where=f"{where}.p")
        r = _number(data, "r", where)
        try:
            return TrivPoint(p, r, data.get("irr", "certified"))
        except InputError as e:
            raise type(e)(str(e), field=f"{where}.{e.field}") from None
    if kind == "derived":
        op = data.get("op")
        if not isinstance(op, str):
            raise InputError("derived point needs a string 'op'", field=f"{where}.op")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise InputError("params must be an object", field=f"{where}.params")
        base = point_from_json(data.get("base"), where=f"{where}.base")
        return DerivedPoint(op, dict(params), base)
    raise InputError(f"unknown point kind {kind!r}", field=f"{where}.kind")


def _float_str(x: float) -> str:
    return repr(float(x))


def _fraction_str(r: Fraction) -> str:
    """Short decimal when exact, num/den otherwise."""
    d = r.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        s = f"{float(r)!r}"
        if Fraction(s) == r:
            return s
    return f"{r.numerator}/{r.denominator}"


def point_to_json(x: HybridPoint) -> dict:
    if isinstance(x, ArchPoint):
        out = {"kind": "arch", "field": x.field.value,
               "z": {"re": _float_str(x.z.real), "im": _float_str(x.z.imag)},
               "t": _float_str(x.t)}
        if x.log_modulus is not None:
            out["log_modulus"] = _float_str(x.log_modulus)
        return out
    if isinstance(x, TrivPoint):
        return {"kind": "triv", "field": x.field.value, "p": x.p.to_json(),
                "r": _fraction_str(x.r), "irr": x.irr}
    if isinstance(x, DerivedPoint):
        return {"kind": "derived", "op": x.op, "params": dict(x.params),
                "base": point_to_json(x.base)}
    raise InputError(f"cannot serialise {x!r}")


def load_json_arg(arg: str, what: str = "input") -> Any:
    """Inline JSON text or a path to a JSON file."""
    text = arg
    s = arg.strip()
    if not (s.startswith("{") or s.startswith("[")):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}",
                         field=what) from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


__all__ = ["poly_from_json", "poly_to_json", "point_from_json", "point_to_json",
           "load_json_arg", "dumps"]
