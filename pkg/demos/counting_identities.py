"""Exact big-integer counting identities: projective point counts from
orbit-stabilizer data, and 26-dimensional orbit-size polynomials summing
to quadric point counts.

Run:  python3 demos/counting_identities.py
"""

from orbita.verify import counting_identities

for q in (5, 7, 11, 13):
    print(counting_identities("PGL2", q).to_text())
print()
for q in (2, 3, 4, 5, 16):
    print(counting_identities("F4", q).to_text())
