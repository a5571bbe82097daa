"""Torus and root-element identities in the 64-dimensional half-spin
module at characteristic 2, plus the invariant quadratic form Q_X.

Run:  python3 demos/spin_identities.py
"""

from orbita.field import GF
from orbita.spinor import (
    Spinor, format_clifford, root_element, spin_action, spin_quadratic,
    torus_element,
)

F = GF(64)
x = Spinor.from_string(F, "1 + f1f2f3f7 + f4f5f6f7 + f1f2f3f4f5f6")

print("torus element s7(lambda) acting on the four-term spinor:")
for lam in (2, 3, 17):
    got = spin_action(torus_element(F, 7, lam), x)
    print(f"  lambda={lam:2d}:  {got}")
    print(f"            Q_X = {spin_quadratic(got)}  "
          f"(= (lambda + lambda^-1)^2 = "
          f"{F.mul(F.add(lam, F.inv(lam)), F.add(lam, F.inv(lam)))})")

print()
print("a root element and its inverse:")
r = root_element(F, 4, 7, 5)
print(f"  s(4,7)(5)    = {format_clifford(r)}")
print(f"  inverse      = {format_clifford(r.inverse())}")

print()
print("Q_X of the distinguished singular spinor:")
print(f"  Q_X(1 + f1f2f3f4f5f6) = "
      f"{spin_quadratic(Spinor.from_string(F, '1 + f1f2f3f4f5f6'))}")
