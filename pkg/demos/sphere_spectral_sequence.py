"""The E_2-page for BP_* L_n S^0 and what it converges to.

With BP_* X = R the page has two columns: s = 0 holds R itself, s = n holds
R/(p^inf, ..., v_n^inf).  Column 0 is the image of the input, so it consists
of permanent cycles; no other differential has a nonzero target.  The page
collapses to a two-step filtration.
"""

from bplocal import ModuleSum, RingDescriptor, abutment_report, assemble_E2, detect_collapse
from bplocal.spectral import E2Page

for n in range(1, 5):
    ring = RingDescriptor(prime=2, truncation=n)
    page = assemble_E2(ModuleSum.free(ring), n)
    print(f"n = {n}: columns {page.nonzero_columns}, {detect_collapse(page)}")
    report = abutment_report(page)
    print("   ", report.render("unicode").replace("\n", "\n    "))

# Degree by degree for n = 1: total degree m gets E_inf^{0,m} and E_inf^{1,m+1}.
ring = RingDescriptor(prime=2, truncation=1)
report = abutment_report(assemble_E2(ModuleSum.free(ring), 1))
for m in range(-5, 3):
    pieces = ", ".join(f"s={s}: {g}" for s, _, g in report.in_degree(m))
    print(f"  BP_{m}(L_1 S^0) filtered by  {pieces}")

# A page where nothing forces collapse.
X = ModuleSum.invariant_quotient(RingDescriptor(2, 3), 2)
print("\nsynthetic page:", detect_collapse(E2Page(3, {1: X, 3: X})))
