"""Walk through two orbit partitions on singular projective points.

The 5-dimensional module for PGL2(q) carries a unique invariant
quadratic form; its singular points split into 4 orbits when q = 2 mod 3
and 6 orbits when q = 1 mod 3.  The 16-dimensional tensor module for
Sp4(q) x Sp4(q) splits into 7 orbits at q = 2, organized by matrix rank.

Run:  python3 demos/orbit_partitions.py
"""

from orbita.cases import build_case
from orbita.scan import orbit_partition, stabilizer_order

for q in (5, 7):
    case = build_case("A1-sym4", q)
    report = orbit_partition(case)
    print(report.to_text())
    print(f"effective group order |PGL2({q})| = {case.effective_order}")
    print(f"orbit sizes sum to 1+q+q^2+q^3 = {1 + q + q * q + q ** 3}")
    print()

case = build_case("Sp4xSp4", 2)
report = orbit_partition(case)
print(report.to_text())
v_i = next(r.coords for r in case.representatives if r.label == "v_I")
print(f"stabilizer of <v_I>: {stabilizer_order(case, v_i)}  (= |Sp4(2)|)")
