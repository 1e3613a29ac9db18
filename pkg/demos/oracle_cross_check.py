"""Checking the symbolic answer against brute-force linear algebra.

Over Z_(2)[v_1], H^2 of R with respect to (2, v_1) is R/(2^inf, v_1^inf):
one Prufer group Z/2^inf in each degree -2, -4, ...  The oracle never sees
that formula.  It builds Koszul complexes for the ideals (2^r, v_1^r),
computes their cohomology degree by degree with a Smith normal form over
Z_(2), and watches the images along r grow by a factor 2 per step.
"""

from bplocal import ModuleSum, RingDescriptor, colim_stabilize, local_cohomology
from bplocal.koszul import compare_with_symbolic, reports_to_csv

ring = RingDescriptor(prime=2, truncation=1)
ideal = ring.ideal(1)
R = ModuleSum.free(ring)

print("symbolic:", local_cohomology(R, ideal).render())

# One stabilization report: the image profile along the tower.
rep = colim_stabilize(2, ideal, R, -6)
print(f"\ndegree -6, H^2: Koszul powers {rep.stages}")
print("  image invariants (free rank, torsion exponents):", rep.images)
print("  classified as", rep.group)

reports = [colim_stabilize(k, ideal, R, d) for k in range(3) for d in range(-8, 1)]
print("\n" + reports_to_csv(reports))

# A module with finite answers, and the comparison harness on both.
for M in (R, ModuleSum.invariant_quotient(ring, 1) + ModuleSum.free(ring, 2)):
    report = compare_with_symbolic(local_cohomology(M, ideal), M, range(-12, 3))
    print(f"{M}: {len(report.rows)} comparisons, {len(report.mismatches)} mismatches")
