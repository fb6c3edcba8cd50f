"""Numeric roots: companion-matrix start values polished by Aberth iteration."""
from __future__ import annotations

import numpy as np

from .errors import NoConvergence
from .polynomial import Polynomial

MAX_ITER = 200


def _horner2(cs, z):
    """p(z) and p'(z) for coefficients lowest first."""
    p = 0j
    dp = 0j
    for c in reversed(cs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def roots_numeric(p: Polynomial, tol: float = 1e-10) -> list[complex]:
    """All deg p roots with multiplicity, in a deterministic order.

    Residual check is |p(root)| <= tol * sum |a_i||root|^i.  Clustered roots
    converge only linearly under Aberth, which is why the residual (and not
    the root error) is what gets checked.
    """
    if p.degree < 1:
        raise ValueError("roots_numeric needs degree >= 1")
    cs = p.complex_coeffs
    lead = cs[-1]
    cs = [c / lead for c in cs]
    d = len(cs) - 1
    if d == 1:
        return [-cs[0]]
    z = list(np.roots(cs[::-1]).astype(complex))
    for _ in range(MAX_ITER):
        biggest = 0.0
        new = list(z)
        for k in range(d):
            pk, dpk = _horner2(cs, z[k])
            if pk == 0:
                continue
            if dpk == 0:
                ratio = pk
            else:
                ratio = pk / dpk
            s = 0j
            for j in range(d):
                if j != k:
                    diff = z[k] - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            denom = 1 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            new[k] = z[k] - step
            biggest = max(biggest, abs(step) / (1 + abs(z[k])))
        z = new
        if biggest < 1e-15:
            break
    for r in z:
        res = abs(_horner2(cs, r)[0])
        scale = sum(abs(c) * abs(r) ** i for i, c in enumerate(cs))
        if not np.isfinite(res) or res > tol * scale + 1e-300:
            if res > 1e-6 * scale:
                raise NoConvergence(f"root {r} of {p.pretty()} has residual {res:.3g}")
    return sorted(z, key=lambda w: (round(w.real, 9), round(w.imag, 9)))


def critical_values(p: Polynomial) -> list[complex]:
    """Images under p of the roots of p'."""
    dp = p.derivative()
    if dp.degree < 1:
        return []
    return [p(c) for c in roots_numeric(dp)]
