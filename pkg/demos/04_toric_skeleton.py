"""Retracting affine space over a valued base onto its skeleton.

Run:  python3 demos/04_toric_skeleton.py

A Gauss point over (Q, |.|_3) is a centre c and radii r.  The homotopy q
spreads it by the torus action until the centre no longer matters; J then
lowers the base norm to the trivial one.
"""
from fractions import Fraction

from hybridberk.multipoly import MultiPoly
from hybridberk.toric import GaussPoint, alpha, j_point, lam, q_eval, q_point, skeleton_member

base = alpha(1, "hyb:3")
x = GaussPoint(base, (6,), (0,))
f = MultiPoly.var(0, 1) + 3

print(f"x = {x!r}")
print(f"f = {f.pretty()}")
print()
print("|f(q(t, x))| as t runs from 0 to 1:")
for t in (Fraction(0), Fraction(1, 6), Fraction(1, 3), Fraction(2, 3), Fraction(1)):
    print(f"  t = {str(t):<4} {q_eval(t, x, f)}")

y = q_point(1, x)
print()
print(f"q(1, x) = {y!r}, on the skeleton: {skeleton_member(y)}")

print()
print("J lowers the base level of the skeleton point:")
for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
    z = j_point(t, y)
    print(f"  J({t}, .) = {z!r}  base {lam(z)!r}")
