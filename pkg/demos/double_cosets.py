"""Double-coset invariants for the diagonal symplectic subgroup.

tau(g) = J^-1 g^-T J fixes Sp6 pointwise, and the eigenvalue spectrum
of tau(g^-1) g is constant on Sp6-double-cosets in SL6.  Counting the
distinct spectra over singular diagonal determinant-1 matrices bounds
the number of singular double cosets from below; the count grows with
the field.

Run:  python3 demos/double_cosets.py
"""

from orbita.scan import (
    scan_diagonal_cosets, tau_invariant, witness_matrix, witness_spectrum,
)

A = witness_matrix(7, 1, 2)
print(f"witness A = diag{tuple(A[i, i] for i in range(6))} over GF(7)")
print(f"spectrum of tau(A^-1) A : {tau_invariant(A)}")
print(f"expected                : {witness_spectrum(7, 1, 2)}")
print()
for q in (7, 13, 19):
    print(f"GF({q:2d}): {scan_diagonal_cosets(q):3d} distinct spectra "
          "over singular diagonal SL6 elements")
