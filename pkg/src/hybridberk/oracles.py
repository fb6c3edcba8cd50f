"""Brute-force oracles for the closed-form evaluations, and the SDR axiom driver.

The oracles deliberately avoid the code paths they check:

* ``taylor_norm_oracle`` finds a root numerically and Taylor-expands in
  floating point, where ``eval_trivial`` uses exact division.
* ``series_expansion_oracle`` substitutes u = 1 + v symbolically with sympy,
  where ``f_expansion`` uses binomial coefficients.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
import sympy

from .core_points import NormValue, ProbeFamily, default_probes
from .errors import NoConvergence
from .homotopy import Homotopy
from .multipoly import MultiPoly
from .polynomial import Polynomial
from .rootfinding import roots_numeric
from .toric import ToricExpansion

ZERO_THRESHOLD = 1e-6


# ------------------------------------------------------------ Taylor oracle

def _taylor_at(coeffs: list[complex], a: complex) -> list[complex]:
    """Coefficients of f(T + a) by repeated synthetic division."""
    cs = list(coeffs)
    n = len(cs)
    out = []
    for k in range(n):
        # divide cs (lowest first) by (T - a): remainder is the next coefficient
        acc = 0j
        quotient = [0j] * (len(cs) - 1)
        for i in range(len(cs) - 1, -1, -1):
            acc = acc * a + cs[i]
            if i > 0:
                quotient[i - 1] = acc
        out.append(acc)
        cs = quotient
        if not cs:
            break
    return out


def taylor_norm_oracle(f: Polynomial, p: Polynomial, r) -> NormValue:
    """max_i |a_i|_0 r^i with a_i the Taylor coefficients of f about a numeric root of p.

    A coefficient counts as zero when its modulus is below 1e-6 times the
    largest coefficient modulus of the expansion.
    """
    r = float(r)
    if f.is_zero():
        return NormValue(0.0, False)
    try:
        root = roots_numeric(p)[0]
    except NoConvergence:
        raise
    a = _taylor_at(list(f.complex_coeffs), root)
    scale = max(abs(c) for c in a)
    if not math.isfinite(scale):
        raise NoConvergence(f"Taylor expansion of {f.pretty()} overflowed")
    nonzero = [i for i, c in enumerate(a) if abs(c) > ZERO_THRESHOLD * scale]
    best = max((r ** i if i else 1.0) for i in nonzero)
    return NormValue(best, False)


# ----------------------------------------------------------- series oracle

def series_expansion_oracle(g: MultiPoly) -> ToricExpansion:
    """Expand g(T, 1 + v) by exact symbolic substitution and collect in v."""
    if g.nvars % 2:
        raise ValueError("a polynomial on the torus-extended space has 2n variables")
    n = g.nvars // 2
    T = sympy.symbols(f"T0:{n}")
    u = sympy.symbols(f"u0:{n}")
    v = sympy.symbols(f"v0:{n}")
    expr = sympy.Integer(0)
    for e, c in g.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for sym, k in zip(T + u, e):
            term *= sym ** k
        expr += term
    expr = sympy.expand(expr.subs({ui: 1 + vi for ui, vi in zip(u, v)}, simultaneous=True))
    if expr == 0:
        return ToricExpansion(n, {})
    poly = sympy.Poly(expr, *(v + T))
    acc: dict[tuple, dict] = {}
    for mon, c in poly.terms():
        mu, alpha = tuple(mon[:n]), tuple(mon[n:])
        q = sympy.Rational(c)
        acc.setdefault(mu, {})[alpha] = f"{q.p}/{q.q}"
    return ToricExpansion(n, {mu: MultiPoly(terms, n) for mu, terms in acc.items()})


# ------------------------------------------------------------- axiom driver

AXIOMS = ("identity_at_0", "target_at_1", "fixed_set", "monotone_stopping")


@dataclass
class AxiomTally:
    passed: int = 0
    failed: int = 0
    vacuous: int = 0
    first_counterexample: Any = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "vacuous": self.vacuous,
                "first_counterexample": self.first_counterexample}


@dataclass
class AxiomReport:
    name: str
    trials: int
    tallies: dict = field(default_factory=lambda: {a: AxiomTally() for a in AXIOMS})
    errors: int = 0

    @property
    def ok(self) -> bool:
        return self.errors == 0 and all(t.failed == 0 for t in self.tallies.values())

    def failing(self) -> list[str]:
        return [a for a, t in self.tallies.items() if t.failed]

    def to_json(self) -> dict:
        return {"homotopy": self.name, "trials": self.trials, "ok": self.ok,
                "errors": self.errors,
                "axioms": {a: t.to_json() for a, t in self.tallies.items()}}

    def summary(self) -> str:
        parts = [f"{a}={t.passed}/{t.passed + t.failed}" for a, t in self.tallies.items()]
        return f"{self.name}: " + " ".join(parts) + ("" if self.ok else f" FAILING {self.failing()}")


def _serialize(obj) -> Any:
    from .serialization import point_to_json
    from .toric import toric_point_to_json

    for enc in (point_to_json, toric_point_to_json):
        try:
            out = enc(obj)
            json.dumps(out)
            return out
        except Exception:
            continue
    return repr(obj)


def sdr_axiom_suite(H: Homotopy, sampler: Callable[[np.random.Generator], Any], trials: int = 500,
                    tol: float = 1e-8, seed: int = 0,
                    serialize: Callable[[Any], Any] = _serialize) -> AxiomReport:
    """Check the strong-deformation-retraction axioms on sampled points.

    For each sampled x and time t:

    * identity_at_0:     H(0, x) = x
    * target_at_1:       H(1, x) lies in the target
    * fixed_set:         y = H(1, x) is held by H(t, .)
    * monotone_stopping: once H(t, x) is in the fixed set it stays put for t' >= t

    Equality is H.close at tolerance tol.  Exceptions count as failures of
    the axiom being checked and are tallied in ``errors``.
    """
    rng = np.random.default_rng(seed)
    report = AxiomReport(H.name, trials)

    def record(axiom, ok, witness):
        tally = report.tallies[axiom]
        if ok is None:
            tally.vacuous += 1
        elif ok:
            tally.passed += 1
        else:
            tally.failed += 1
            if tally.first_counterexample is None:
                tally.first_counterexample = witness

    for _ in range(trials):
        x = sampler(rng)
        t = float(rng.uniform(0, 1))
        t2 = t + float(rng.uniform(0, 1)) * (1 - t)
        checks = (
            ("identity_at_0", lambda: (H.close(H(0.0, x), x, tol), {"x": serialize(x)})),
            ("target_at_1", lambda: _target_check(H, x)),
            ("fixed_set", lambda: _fixed_check(H, x, t, tol)),
            ("monotone_stopping", lambda: _stopping_check(H, x, t, t2, tol)),
        )
        for axiom, fn in checks:
            try:
                ok, witness = fn()
            except Exception as e:  # an axiom that cannot even be evaluated has failed
                report.errors += 1
                ok, witness = False, {"x": serialize(x), "t": t, "error": f"{type(e).__name__}: {e}"}
            if isinstance(witness, dict):
                witness = {k: (serialize(v) if k in ("y", "z") else v) for k, v in witness.items()}
            record(axiom, ok, witness)
    return report


def _target_check(H, x):
    y = H(1.0, x)
    return bool(H.target(y)), {"x": _serialize(x), "y": y}


def _fixed_check(H, x, t, tol):
    y = H(1.0, x)
    if not H.fixed(y):
        return None, None
    z = H(t, y)
    return H.close(z, y, tol), {"x": _serialize(x), "t": t, "y": y, "z": z}


def _stopping_check(H, x, t, t2, tol):
    y = H(t, x)
    if not H.fixed(y):
        return None, None
    z = H(t2, x)
    return H.close(z, y, tol), {"x": _serialize(x), "t": t, "t2": t2, "y": y, "z": z}


__all__ = ["taylor_norm_oracle", "series_expansion_oracle", "sdr_axiom_suite", "AxiomReport",
           "AxiomTally", "AXIOMS", "ProbeFamily", "default_probes", "ZERO_THRESHOLD"]
