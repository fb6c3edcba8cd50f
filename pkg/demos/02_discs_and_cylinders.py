"""Hybrid discs, their cylinder coordinates, and the cylinder retraction.

Run:  python3 demos/02_discs_and_cylinders.py [--svg disc.svg]

The disc D(T, delta) is parametrized by the solid cylinder {|w| <= 1} x [0, 1]:
the bottom s = 0 is the trivially valued segment eta_{T,|w|}, and the level s
is the Archimedean fibre lambda = delta * s.  Retracting the cylinder onto
its bottom, wall and axis gives the retraction of the disc.
"""
import argparse
import cmath

from hybridberk.core_points import ArchPoint
from hybridberk.discs import (
    CylinderCoord, DiscSpec, RegionTag, chi, delta_threshold, g_delta, g_delta_inverse, region_member,
)
from hybridberk.polynomial import QI_FIELD, Polynomial
from hybridberk.render import RenderSpec, write_svg
from hybridberk.retractions import cylinder_sdr_nplus

ap = argparse.ArgumentParser()
ap.add_argument("--svg", help="also write a picture of the disc")
args = ap.parse_args()

T = Polynomial.T(QI_FIELD)
spec = DiscSpec(T, 1.0)

print("chi(t) = t^t bounds |T| on the disc:")
for t in (0.0, 0.1, 0.5, 1.0):
    print(f"  chi({t}) = {chi(t):.6f}")

print()
print("Membership of a few points in D(T, 1):")
for x in (ArchPoint(0.5, 0.5), ArchPoint(0.75, 0.5), ArchPoint(1.0, 1.0)):
    tags = [tag.value for tag in (RegionTag.D, RegionTag.C, RegionTag.E) if region_member(x, spec, tag)]
    print(f"  {x!r:<16} in {tags or ['nothing']}")

print()
print("Cylinder coordinates and back:")
for w, s in ((0.5, 0.0), (0.5j, 0.5), (0.9 * cmath.exp(1j), 1.0)):
    c = CylinderCoord(w, s)
    x = g_delta(c, 1.0)
    back = g_delta_inverse(x, 1.0)
    print(f"  ({w:.3g}, {s})  ->  {x!r:<22} ->  ({back.w:.3g}, {back.s:.3g})")

print()
print("The cylinder retraction moving (0.3, 0.6) down to the bottom and the wall:")
c = CylinderCoord(0.3, 0.6)
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    out = cylinder_sdr_nplus(t, c)
    print(f"  t = {t:<4}  radius {out.radius:.4f}  height {out.s:.4f}")

print()
print("How large a disc fits around a polynomial before it swallows a critical point:")
for coeffs in ([0, 1], [-1, 0, 1], [1, 0, 1], ["-1/16", 0, 1]):
    p = Polynomial(coeffs, QI_FIELD)
    print(f"  Delta({p.pretty()}) = {delta_threshold(p):.6g}")

if args.svg:
    write_svg(RenderSpec("disc"), args.svg)
    print()
    print("wrote", args.svg)
