"""A walk along the hybrid affine line.

Run:  python3 demos/01_points_of_the_line.py

Archimedean points ev(z, t) evaluate a polynomial as |f(z)|^t.  As t shrinks
the value of any nonzero constant tends to 1, which is where the trivially
valued points eta_{p,r} live: there |f| depends only on how often p divides f.
"""
from fractions import Fraction

from hybridberk.core_points import (
    ArchPoint, TrivPoint, conjugate, enumerate_irreducibles, lambda_of, restrict_scalars, seminorm,
)
from hybridberk.polynomial import QI_FIELD, Polynomial
from hybridberk.scalars import QI

T = Polynomial.T(QI_FIELD)
f = (T - 1) ** 2 * (T + QI(0, 1))

print("f =", f.pretty())
print()
print("Shrinking t at the centre z = 1 + 1/100:")
for t in (1.0, 0.5, 0.1, 0.01):
    x = ArchPoint(1.01, t)
    print(f"  lambda = {lambda_of(x):<5}  |f(x)| = {seminorm(x, f)}")

print()
print("Trivially valued points on the branch of T - 1 (f has T - 1 twice):")
for r in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)):
    x = TrivPoint(T - 1, r)
    print(f"  {x!r:<18} |f(x)| = {seminorm(x, f)}")

print()
print("Complex conjugation swaps the branches of T - i and T + i:")
x = TrivPoint(T - QI(0, 1), Fraction(1, 3))
print(f"  I({x!r}) = {conjugate(x)!r}")
print(f"  over Q both become {restrict_scalars(x)!r}")

print()
print("The first irreducibles over Q(i), in enumeration order:")
print("  " + ", ".join(p.pretty() for p in enumerate_irreducibles(QI_FIELD, 10)))
