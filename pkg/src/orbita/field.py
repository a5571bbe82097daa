"""Exact arithmetic in GF(p^k) for small prime powers.

Elements are plain Python integers.  An element with polynomial
coordinates (c_0, ..., c_{k-1}) over GF(p) is packed as the integer
sum c_i * p^i, so for p=2 the packing is the usual bit packing and for
k=1 elements are just residues 0..p-1.  The element `p` itself is the
image of the polynomial variable t.

Each field fixes one monic irreducible modulus of degree k: the one
whose packed encoding is smallest.  For p=2 this gives the classical
choices (t^2+t+1, t^3+t+1, t^4+t+1, t^6+t+1, ...), so encodings are
reproducible across runs and platforms.

For q <= 512 the field precomputes dense q x q add/mul tables (python
lists, plus numpy uint8 copies used by the vectorized orbit scanner).
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional, Set, Tuple

import numpy as np

_TABLE_LIMIT = 512

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
                 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = 257
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_prime_power(q: int) -> Tuple[int, int]:
    """Return (p, k) with q = p^k, p prime; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in _SMALL_PRIMES:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    if is_prime(q):
        return q, 1
    raise ValueError(f"{q} is not a prime power")


# ----------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients low-degree-first
# ----------------------------------------------------------------------

def _ptrim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmulmod(a: List[int], b: List[int], mod: List[int], p: int) -> List[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _pdivmod(prod, mod, p)[1]


def _pdivmod(a: List[int], b: List[int], p: int) -> Tuple[List[int], List[int]]:
    a = list(a)
    _ptrim(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] * inv_lead % p
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _ptrim(a)
    return q, a


def _irreducible(poly: List[int], p: int) -> bool:
    """Trial division by all lower-degree monic polynomials up to deg/2."""
    k = len(poly) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for enc in range(p ** d):
            div = [(enc // p ** i) % p for i in range(d)] + [1]
            if not _pdivmod(poly, div, p)[1]:
                return False
    return True


def least_irreducible(p: int, k: int) -> List[int]:
    """Monic irreducible of degree k over GF(p) with minimal packed encoding."""
    if k == 1:
        return [0, 1]
    for enc in range(p ** k):
        poly = [(enc // p ** i) % p for i in range(k)] + [1]
        if _irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


# ----------------------------------------------------------------------

class FieldSpec:
    """The finite field GF(p^k) with integer-packed elements.

    Immutable after construction; all operations are pure, so instances
    are safe to share between threads.  Use the module-level `GF(q)`
    factory, which caches one spec per q.
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = least_irreducible(p, k)  # low-degree-first, monic
        self._powers = [p ** i for i in range(k)]

        self.add_table: Optional[list] = None
        self.mul_table: Optional[list] = None
        self.inv_table: Optional[list] = None
        self.np_add: Optional[np.ndarray] = None
        self.np_mul: Optional[np.ndarray] = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding ------------------------------------------------------

    def coeffs(self, a: int) -> List[int]:
        """Polynomial coordinates (c_0..c_{k-1}) of a packed element."""
        return [(a // pw) % self.p for pw in self._powers]

    def pack(self, coeffs) -> int:
        return sum(int(c) % self.p * pw for c, pw in zip(coeffs, self._powers))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    @property
    def one(self) -> int:
        return 1

    @property
    def gen(self) -> int:
        """The polynomial variable t (only a field generator when k > 1)."""
        return self.p if self.k > 1 else 1

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            c = 1 if i == self.k else self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                lead = "" if c == 1 else str(c)
                terms.append(f"{lead}t^{i}" if i > 1 else f"{lead}t")
        return " + ".join(terms)

    # -- raw arithmetic ------------------------------------------------

    def _add_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.pack([(x + y) % self.p for x, y in zip(ca, cb)])

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        res = _pmulmod(_ptrim(self.coeffs(a)), _ptrim(self.coeffs(b)),
                       self.modulus, self.p)
        return self.pack(res + [0] * (self.k - len(res)))

    def _build_tables(self) -> None:
        q = self.q
        self.add_table = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self.mul_table[a]
            inv[a] = row.index(1)
        self.inv_table = inv
        self.np_add = np.array(self.add_table, dtype=np.uint8)
        self.np_mul = np.array(self.mul_table, dtype=np.uint8)

    # -- public arithmetic --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.pack([(-c) % self.p for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.inv_table is not None:
            return self.inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- roots ---------------------------------------------------------

    def square_root(self, x: int) -> Optional[int]:
        """r with r^2 = x, or None when x is a non-square (odd p only).

        For p=2 squaring is the Frobenius, hence bijective: the root is
        x^(2^(k-1)).  Odd characteristic uses exhaustive search (fields
        here are <= 2^16 elements).
        """
        if self.p == 2:
            return self.pow(x, 2 ** (self.k - 1))
        for r in range(self.q):
            if self.mul(r, r) == x:
                return r
        return None

    def quadratic_roots(self, a: int, b: int, c: int) -> Set[int]:
        """Exact root set of a*x^2 + b*x + c, found exhaustively."""
        if a == 0:
            raise ValueError("leading coefficient must be nonzero")
        roots = set()
        for x in range(self.q):
            v = self.add(self.mul(a, self.mul(x, x)), self.add(self.mul(b, x), c))
            if v == 0:
                roots.add(x)
        return roots

    def non_square(self) -> int:
        """Smallest non-square in GF(q)*; exists only for odd q."""
        if self.p == 2:
            raise ValueError("every element of a characteristic-2 field is a square")
        squares = {self.mul(x, x) for x in self.nonzero()}
        for x in self.nonzero():
            if x not in squares:
                return x
        raise AssertionError("no non-square found in odd-order field")

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group."""
        target = self.q - 1
        for g in self.nonzero():
            seen, x = 1, g
            while x != 1:
                x = self.mul(x, g)
                seen += 1
            if seen == target:
                return g
        raise AssertionError("no primitive element found")

    # -- embeddings ----------------------------------------------------

    def embedding_into(self, ext: "FieldSpec"):
        """Field embedding GF(p^k) -> GF(p^(k*e)) as a callable on packed ints.

        Sends t to the smallest root of this field's modulus in `ext`
        (deterministic choice), and is the identity on GF(p).
        """
        if ext.p != self.p or ext.k % self.k != 0:
            raise ValueError("no embedding: incompatible field sizes")
        if ext.q == self.q:
            return lambda a: a
        root = None
        for x in ext.elements():
            acc, xp = 0, 1
            for c in self.modulus[:-1]:
                acc = ext.add(acc, ext.mul(c % self.p, xp))
                xp = ext.mul(xp, x)
            acc = ext.add(acc, xp)  # monic leading term
            if acc == 0:
                root = x
                break
        if root is None:
            raise AssertionError("modulus has no root in the extension")
        images = []
        for a in range(self.q):
            acc, xp = 0, 1
            for c in self.coeffs(a):
                acc = ext.add(acc, ext.mul(c, xp))
                xp = ext.mul(xp, root)
            images.append(acc)
        return lambda a: images[a]

    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.q == other.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """Cached field constructor; q must be a prime power."""
    p, k = factor_prime_power(q)
    return FieldSpec(p, k)
