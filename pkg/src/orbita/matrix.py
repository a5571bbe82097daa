"""Exact dense linear algebra over a FieldSpec.

Matrices are immutable row-major tuples of packed field integers.
Vectors are plain tuples.  Everything here is pure Python: dimensions
in this suite stay below ~70, and the performance-critical bulk work
(orbit scans) lives in the vectorized scan engine instead.

Also holds polynomial utilities over a field (coefficients stored
low-degree-first) and projective-point canonicalization with packed
integer keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .field import FieldSpec

Vector = Tuple[int, ...]


class Mat:
    """Immutable matrix over a FieldSpec; entries are packed field ints."""

    __slots__ = ("F", "m", "n", "rows")

    def __init__(self, F: FieldSpec, rows: Sequence[Sequence[int]]):
        self.F = F
        self.rows: Tuple[Vector, ...] = tuple(tuple(int(x) for x in r) for r in rows)
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("ragged rows")

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(F: FieldSpec, n: int) -> "Mat":
        return Mat(F, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(F: FieldSpec, m: int, n: int) -> "Mat":
        return Mat(F, [[0] * n for _ in range(m)])

    @staticmethod
    def diag(F: FieldSpec, entries: Sequence[int]) -> "Mat":
        n = len(entries)
        return Mat(F, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # -- basics --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.F == other.F and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Mat({self.F}, {self.m}x{self.n})"

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Mat":
        return Mat(self.F, list(zip(*self.rows))) if self.rows else self

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def __add__(self, other: "Mat") -> "Mat":
        F = self.F
        return Mat(F, [[F.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        F = self.F
        return Mat(F, [[F.sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def scale(self, c: int) -> "Mat":
        F = self.F
        return Mat(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def __neg__(self) -> "Mat":
        return self.scale(self.F.neg(1))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.n != other.m:
            raise ValueError("shape mismatch")
        F = self.F
        add, mul = F.add, F.mul
        bt = other.transpose().rows
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = 0
                for a, b in zip(ra, cb):
                    if a and b:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(F, out)

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.F, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def trace(self) -> int:
        F = self.F
        acc = 0
        for i in range(min(self.m, self.n)):
            acc = F.add(acc, self.rows[i][i])
        return acc

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.rows)

    def apply(self, v: Sequence[int]) -> Vector:
        """Row-vector action v . M."""
        F = self.F
        add, mul = F.add, F.mul
        out = []
        for j in range(self.n):
            acc = 0
            for i, vi in enumerate(v):
                if vi:
                    a = self.rows[i][j]
                    if a:
                        acc = add(acc, mul(vi, a))
            out.append(acc)
        return tuple(out)

    # -- elimination ---------------------------------------------------

    def rref(self) -> Tuple["Mat", List[int]]:
        """Reduced row echelon form and pivot column list."""
        F = self.F
        rows = [list(r) for r in self.rows]
        pivots: List[int] = []
        r = 0
        for c in range(self.n):
            pivot = next((i for i in range(r, self.m) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, x) for x in rows[r]]
            for i in range(self.m):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.m:
                break
        return Mat(F, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> int:
        if self.m != self.n:
            raise ValueError("determinant of non-square matrix")
        F = self.F
        rows = [list(r) for r in self.rows]
        det = 1
        for c in range(self.n):
            pivot = next((i for i in range(c, self.n) if rows[i][c]), None)
            if pivot is None:
                return 0
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = F.neg(det)
            det = F.mul(det, rows[c][c])
            inv = F.inv(rows[c][c])
            for i in range(c + 1, self.n):
                if rows[i][c]:
                    f = F.mul(inv, rows[i][c])
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> "Mat":
        if self.m != self.n:
            raise ValueError("inverse of non-square matrix")
        F = self.F
        aug = Mat(F, [list(r) + [1 if i == j else 0 for j in range(self.n)]
                      for i, r in enumerate(self.rows)])
        red, pivots = aug.rref()
        if pivots[: self.n] != list(range(self.n)):
            raise ValueError("matrix is singular")
        return Mat(F, [r[self.n:] for r in red.rows])

    def kernel(self) -> List[Vector]:
        """Basis of {v : v . M = 0} computed on the transpose, returned
        as row vectors; deterministic order."""
        return self.transpose().right_kernel()

    def right_kernel(self) -> List[Vector]:
        """Basis of {x : M . x = 0} as tuples."""
        F = self.F
        red, pivots = self.rref()
        free = [c for c in range(self.n) if c not in pivots]
        basis = []
        for fc in free:
            v = [0] * self.n
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = F.neg(red.rows[r][fc])
            basis.append(tuple(v))
        return basis


def solve_linear(A: Mat, b: Sequence[int]) -> Optional[Tuple[Vector, List[Vector]]]:
    """Solve A . x = b for a column vector x (returned as a tuple).

    Returns (particular solution, kernel basis) or None when
    inconsistent.  The kernel basis spans {x : A . x = 0}.
    """
    if len(b) != A.m:
        raise ValueError("shape mismatch")
    F = A.F
    aug = Mat(F, [list(r) + [b[i]] for i, r in enumerate(A.rows)])
    red, pivots = aug.rref()
    if A.n in pivots:
        return None
    x = [0] * A.n
    for r, pc in enumerate(pivots):
        x[pc] = red.rows[r][-1]
    return tuple(x), A.right_kernel()


def solve_left(A: Mat, b: Sequence[int]) -> Optional[Tuple[Vector, List[Vector]]]:
    """Solve x . A = b for a row vector x; kernel spans {x : x.A = 0}."""
    return solve_linear(A.transpose(), b)


# ----------------------------------------------------------------------
# polynomials over a field: coefficient lists, low degree first
# ----------------------------------------------------------------------

def poly_trim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    n = max(len(a), len(b))
    out = [(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0))
           for i in range(n)]
    return poly_trim(out)


def poly_mul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return poly_trim(out)


def poly_divmod(F: FieldSpec, a: Sequence[int], b: Sequence[int]):
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = F.mul(a[-1], inv_lead)
        q[shift] = f
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(f, bi))
        poly_trim(a)
    return q, a


def poly_monic(F: FieldSpec, a: Sequence[int]) -> List[int]:
    a = poly_trim(list(a))
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(inv, c) for c in a]


def poly_gcd(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_lcm(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    g = poly_gcd(F, a, b)
    q, r = poly_divmod(F, poly_mul(F, list(a), list(b)), g)
    assert not r
    return poly_monic(F, q)


def poly_deriv(F: FieldSpec, a: Sequence[int]) -> List[int]:
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(i % F.p, a[i]))
    return poly_trim(out)


def poly_eval(F: FieldSpec, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_is_squarefree(F: FieldSpec, a: Sequence[int]) -> bool:
    """Squarefreeness with the characteristic-p adjustment: a vanishing
    derivative means the polynomial is a p-th power (over a finite
    field), hence not squarefree unless constant/linear."""
    a = poly_trim(list(a))
    if len(a) <= 2:
        return True
    d = poly_deriv(F, a)
    if not d:
        return False
    return len(poly_gcd(F, a, d)) == 1


# ----------------------------------------------------------------------
# characteristic & minimal polynomials
# ----------------------------------------------------------------------

def charpoly(M: Mat) -> List[int]:
    """Characteristic polynomial det(xI - M) via the division-free
    Berkowitz recurrence; monic, low-degree-first coefficients."""
    if M.m != M.n:
        raise ValueError("characteristic polynomial of non-square matrix")
    F = M.F
    n = M.n
    # coefficient vectors stored leading-first during the recurrence
    C = [1]
    for m in range(1, n + 1):
        a = M.rows[m - 1][m - 1]
        R = M.rows[m - 1][: m - 1]
        Col = [M.rows[i][m - 1] for i in range(m - 1)]
        Ap = [row[: m - 1] for row in M.rows[: m - 1]]
        # first column of the (m+1) x m Toeplitz matrix
        t = [1, F.neg(a)]
        vec = Col[:]
        for _ in range(m - 1):
            acc = 0
            for rj, vj in zip(R, vec):
                acc = F.add(acc, F.mul(rj, vj))
            t.append(F.neg(acc))
            vec = [  # vec <- Ap . vec
                _dot(F, Ap[i], vec) for i in range(m - 1)
            ]
        newC = [0] * (m + 1)
        for i in range(m + 1):
            acc = 0
            for j in range(len(C)):
                if 0 <= i - j < len(t):
                    acc = F.add(acc, F.mul(t[i - j], C[j]))
            newC[i] = acc
        C = newC
    # C is leading-first: C[0] x^n + ... + C[n]
    return poly_trim(list(reversed(C)))


def _dot(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def minimal_polynomial(M: Mat) -> List[int]:
    """Monic minimal polynomial via Krylov spinning per basis vector
    with LCM accumulation."""
    if M.m != M.n:
        raise ValueError("minimal polynomial of non-square matrix")
    F = M.F
    n = M.n
    mp: List[int] = [1]
    for start in range(n):
        v = tuple(1 if i == start else 0 for i in range(n))
        # grow a Krylov chain until linear dependence
        chain = [v]
        echelon: List[List[int]] = []      # rref rows of chain
        coords: List[List[int]] = []       # expression of each echelon row in chain basis
        _insert(F, echelon, coords, list(v), [1])
        while True:
            w = M.apply(chain[-1])
            expr = [0] * len(chain) + [0]
            expr[len(chain)] = 1
            chain.append(w)
            dep = _insert(F, echelon, coords, list(w), expr)
            if dep is not None:
                # dep: coefficients over chain giving zero -> annihilator of v
                ann = poly_monic(F, dep)
                mp = poly_lcm(F, mp, ann)
                break
        if len(poly_trim(list(mp))) == n + 1:
            break
    return mp


def _insert(F, echelon, coords, row, expr):
    """Reduce `row` against the echelon; on independence insert and
    return None, on dependence return the dependence coefficients
    (combination over the original chain summing to zero)."""
    comb = list(expr)
    for erow, ecoord in zip(echelon, coords):
        lead = next(i for i, x in enumerate(erow) if x)
        if row[lead]:
            f = F.mul(row[lead], F.inv(erow[lead]))
            for i in range(len(row)):
                row[i] = F.sub(row[i], F.mul(f, erow[i]))
            for i in range(len(ecoord)):
                if i < len(comb):
                    comb[i] = F.sub(comb[i], F.mul(f, ecoord[i]))
                # ecoord never longer than comb by construction
    if any(row):
        echelon.append(row)
        coords.append(comb)
        return None
    return comb


def is_nilpotent(M: Mat) -> bool:
    mp = minimal_polynomial(M)
    return all(c == 0 for c in mp[:-1])


def is_semisimple(M: Mat) -> bool:
    return poly_is_squarefree(M.F, minimal_polynomial(M))


def eigenvalue_multiset(M: Mat, extension_degree: int = 1):
    """Roots-with-multiplicity of the characteristic polynomial over
    GF(q^extension_degree), found by exhaustive evaluation; returns
    None when the polynomial does not split there ("not split")."""
    from .field import GF
    F = M.F
    E = GF(F.q ** extension_degree)
    phi = F.embedding_into(E)
    cp = [phi(c) for c in charpoly(M)]
    roots = []
    for x in E.elements():
        while poly_eval(E, cp, x) == 0 and len(cp) > 1:
            cp, r = poly_divmod(E, cp, [E.neg(x), 1])
            assert not r
            roots.append(x)
        if len(cp) == 1:
            break
    if len(roots) != M.n:
        return None
    return sorted(roots)


# ----------------------------------------------------------------------
# projective points
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivePoint:
    coords: Vector
    key: int


def canonical_point(F: FieldSpec, v: Sequence[int]) -> ProjectivePoint:
    """Scale v so its first nonzero coordinate is 1; key packs the
    canonical coordinates base q, most significant first."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    if lead != 1:
        inv = F.inv(lead)
        v = [F.mul(inv, x) for x in v]
    key = 0
    for x in v:
        key = key * F.q + int(x)
    return ProjectivePoint(tuple(v), key)
