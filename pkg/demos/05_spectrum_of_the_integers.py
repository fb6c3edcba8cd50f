"""The Berkovich spectrum of Z and the retraction of the line over it.

Run:  python3 demos/05_spectrum_of_the_integers.py [--svg star.svg]

Points of the spectrum are the trivial norm, the branches c^{ord_p} for each
prime p, and the powers of the usual absolute value.  The height of a point
on the branch of p is c.  The literal formula r_t stops at c^c; the
corrected version moves c up to max(c, t) and reaches the trivial norm.
"""
import argparse
from fractions import Fraction

from hybridberk.core_points import ArchPoint
from hybridberk.dedekind import (
    ArchBranch, PrimeBranch, Trivial, assembled_sdr, base_eval, height_retraction, ht, r_t,
    spectrum_cover_locate,
)
from hybridberk.polynomial import Q
from hybridberk.render import RenderSpec, write_svg
from hybridberk.toric import lam

ap = argparse.ArgumentParser()
ap.add_argument("--svg", help="also write the star of branches")
args = ap.parse_args()

for z in (Trivial(), PrimeBranch(3, Fraction(1, 4)), ArchBranch(Fraction(1, 2))):
    vals = ", ".join(f"|{a}| = {base_eval(a, z)}" for a in (9, 10, -4))
    print(f"{z!r:<16} {spectrum_cover_locate(z):<15} {vals}")

z = PrimeBranch(2, Fraction(1, 2))
print()
print(f"height of {z!r} is {ht(z)}")
print("  t     r_t                   corrected")
for t in (Fraction(0), Fraction(1, 4), Fraction(3, 4), Fraction(1)):
    print(f"  {str(t):<5} {r_t(z, t)!r:<21} {height_retraction(z, t)!r}")

print()
x = ArchPoint(0.7, 0.3, Q)
print(f"retracting {x!r} on the line over Z:")
for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
    y = assembled_sdr(s, x)
    base = "(Archimedean)" if isinstance(y, ArchPoint) else repr(lam(y))
    print(f"  s = {str(s):<4} {y!r:<40} base {base}")

if args.svg:
    write_svg(RenderSpec("spectrumZ"), args.svg)
    print()
    print("wrote", args.svg)
