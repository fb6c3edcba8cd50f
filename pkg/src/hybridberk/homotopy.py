"""Homotopies as evaluable objects, and the two-piece composition F <| G."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

from .errors import DomainMismatch, InputError


def _always(_x) -> bool:
    return True


def _default_close(a, b, tol):
    from .core_points import points_close

    return points_close(a, b, tol)


@dataclass(frozen=True)
class Homotopy:
    """(t, x) -> x_t with the metadata the SDR axioms talk about.

    ``target`` is the set H(1, .) lands in, ``fixed`` the set held pointwise
    (for a strong deformation retraction the two coincide, which is the
    default).  ``witness(t0, t1, x)``, when given, returns z with
    H(t0, z) = H(t1, x) for t0 <= t1; it certifies the image nesting
    H(t1, X) in H(t0, X) constructively.
    """

    evaluate: Callable[[float, Any], Any]
    domain: Callable[[Any], bool] = _always
    target: Callable[[Any], bool] = _always
    fixed: Callable[[Any], bool] | None = None
    lambda_compatible: bool = True
    name: str = "H"
    close: Callable[[Any, Any, float], bool] = _default_close
    witness: Callable[[float, float, Any], Any] | None = None

    def __post_init__(self):
        if self.fixed is None:
            object.__setattr__(self, "fixed", self.target)

    def __call__(self, t: float, x):
        if not (0.0 <= t <= 1.0):
            raise InputError(f"time {t} outside [0,1]", field="time")
        return self.evaluate(t, x)

    def renamed(self, name: str) -> "Homotopy":
        return replace(self, name=name)


def identity_homotopy(close=_default_close, name: str = "id") -> Homotopy:
    return Homotopy(lambda t, x: x, close=close, name=name,
                    witness=lambda t0, t1, x: x)


def homotopy_compose(F: Homotopy, G: Homotopy, check_domain: bool = True) -> Homotopy:
    """(F <| G)(t,x) = F(0, G(2t, x)) on [0, 1/2] and F(2t-1, G(1, x)) after.

    F(0, .) is the identity, so the first piece is evaluated as G(2t, x).
    """

    def ev(t, x):
        if t <= 0.5:
            return G(2 * t, x)
        y = G(1.0, x)
        if check_domain and not F.domain(y):
            raise DomainMismatch(f"{G.name}(1, x) = {y!r} is outside the domain of {F.name}")
        return F(2 * t - 1, y)

    def fixed(x):
        return F.fixed(x) and G.fixed(x)

    def witness(t0, t1, x):
        if t1 <= 0.5:
            return G.witness(2 * t0, 2 * t1, x)
        if t0 >= 0.5:
            return F.witness(2 * t0 - 1, 2 * t1 - 1, G(1.0, x))
        # t0 in G's half, t1 in F's: the image point already sits in G's fixed set
        return ev(t1, x)

    return Homotopy(
        ev,
        domain=G.domain,
        target=F.target,
        fixed=fixed,
        lambda_compatible=F.lambda_compatible and G.lambda_compatible,
        name=f"({F.name} <| {G.name})",
        close=G.close,
        witness=witness if (F.witness and G.witness) else None,
    )


def compose_many(pieces: Sequence[Homotopy]) -> Homotopy:
    """F_n <| ... <| F_1 nested to the left, with ``pieces = [F_1, ..., F_n]``.

    F_1 runs on [0, 1/2], F_2 on [1/2, 3/4], ..., F_n on [1 - 2^{1-n}, 1], so
    that (F_n <| ... <| F_1)(1, .) = (F_{n+1} <| ... <| F_1)(1 - 2^{-n}, .).
    """
    if not pieces:
        raise InputError("nothing to compose")
    if len(pieces) == 1:
        return pieces[0]
    return homotopy_compose(compose_many(pieces[1:]), pieces[0])
