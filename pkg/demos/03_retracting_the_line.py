"""The glued retraction of the hybrid line onto its trivially valued fibre.

Run:  python3 demos/03_retracting_the_line.py

The schedule lists the first irreducibles with shrinking disc radii e_n.
On [1 - 2^-n, 1 - 2^-(n+1)] the trajectory first squeezes lambda below e_n
and then retracts the n-th disc.  Points sitting over a root of p_n end on
the branch of p_n; everything that is never captured goes to the Gauss point.
"""
from hybridberk.core_points import ArchPoint, lambda_of
from hybridberk.polynomial import QI_FIELD
from hybridberk.retractions import Schedule, global_sdr

sched = Schedule.build(QI_FIELD, 8)
print("schedule:")
for n in range(1, sched.depth + 1):
    print(f"  p_{n} = {sched.p(n).pretty():<10} e_{n} = {sched.e(n):.6g}")
print(f"  discs pairwise disjoint: {sched.disjoint}")

print()
x = ArchPoint(-1, 0.2)
print(f"trajectory of {x!r}:")
for s in (0.0, 0.25, 0.5, 0.7, 0.8, 0.9, 0.95, 1.0):
    res = global_sdr(sched, s, x)
    print(f"  s = {s:<5} lambda = {lambda_of(res.point):<8.4g} {res.point!r}")

print()
print("end points at s = 1:")
for x in (ArchPoint(0, 0.05), ArchPoint(1j, 0.03), ArchPoint(0.001, 0.05),
          ArchPoint(-0.9999, 0.01), ArchPoint(3 + 4j, 0.5)):
    res = global_sdr(sched, 1.0, x)
    note = " (depth reached; Gauss point fallback)" if res.truncated else ""
    print(f"  {x!r:<20} -> {res.point!r}{note}")
