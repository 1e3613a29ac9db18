"""The chromatic resolution and a second computation of L_n.

R/I_k embeds in J_0 = v_k^{-1} R/I_k, the cokernel embeds in J_1, and so on.
L_n keeps the terms that are v_j-local for j <= n and kills the rest, so
L_n^*(R/I_k) is the cohomology of a truncated complex.  The kernel at the
start is R/I_k again, and the last surviving term contributes its cokernel.
"""

from bplocal import ModuleSum, RingDescriptor, cech_cohomology
from bplocal.chromatic import (apply_Ln, build_chromatic_resolution,
                               chromatic_route_derived_L)

ring = RingDescriptor(prime=3, truncation=3)

for k in range(3):
    res = build_chromatic_resolution(ring, k, ring.truncation - k)
    print(f"k = {k}:  {res.render()}")
    for t, f in enumerate(res.maps):
        print(f"    J_{t} -> J_{t + 1}: {f.render()}")

res = build_chromatic_resolution(ring, 0, 3)
for n in range(4):
    alive = apply_Ln(res, n).alive
    print(f"\nL_{n} keeps J_t for t in {[t for t, a in enumerate(alive) if a]}")
    table = chromatic_route_derived_L(ring, 0, n)
    print(table.render("unicode"))
    direct = cech_cohomology(ModuleSum.free(ring), ring.ideal(n))
    print("matches the Cech computation:", table.same_values(direct))
