"""Quadratic forms over a FieldSpec, correct in characteristic 2.

A form is stored by its upper-triangular Gram coefficients U with
Q(v) = sum_{i<=j} U_ij v_i v_j.  The polar form B(u,v) =
Q(u+v) - Q(u) - Q(v) has Gram matrix U + U^T; at p=2 the upper data is
strictly more information than B (diagonal squares are invisible in
the polar form), which is why U is the primary representation.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .field import FieldSpec
from .matrix import Mat, Vector


class QuadraticForm:
    """Q(v) = sum_{i<=j} U_ij v_i v_j with U upper triangular."""

    __slots__ = ("F", "dim", "U")

    def __init__(self, F: FieldSpec, gram_upper: Sequence[Sequence[int]]):
        self.F = F
        self.U = tuple(tuple(int(x) for x in r) for r in gram_upper)
        self.dim = len(self.U)
        for i, row in enumerate(self.U):
            if len(row) != self.dim:
                raise ValueError("Gram matrix must be square")
            if any(row[j] for j in range(i)):
                raise ValueError("Gram data must be upper triangular")

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadraticForm) and self.F == other.F and self.U == other.U

    def __hash__(self) -> int:
        return hash(self.U)

    def __repr__(self) -> str:
        return f"QuadraticForm({self.F}, dim={self.dim})"

    # ------------------------------------------------------------------

    def evaluate(self, v: Sequence[int]) -> int:
        if len(v) != self.dim:
            raise ValueError("vector length mismatch")
        F = self.F
        acc = 0
        for i, vi in enumerate(v):
            if not vi:
                continue
            row = self.U[i]
            for j in range(i, self.dim):
                if row[j] and v[j]:
                    acc = F.add(acc, F.mul(row[j], F.mul(vi, v[j])))
        return acc

    def polar(self, u: Sequence[int], v: Sequence[int]) -> int:
        F = self.F
        s = tuple(F.add(a, b) for a, b in zip(u, v))
        return F.sub(F.sub(self.evaluate(s), self.evaluate(u)), self.evaluate(v))

    def polar_gram(self) -> Mat:
        Um = Mat(self.F, self.U)
        return Um + Um.T

    def scale(self, c: int) -> "QuadraticForm":
        F = self.F
        return QuadraticForm(F, [[F.mul(c, x) for x in row] for row in self.U])

    # ------------------------------------------------------------------

    def pullback(self, g: Mat) -> "QuadraticForm":
        """The form v -> Q(v.g), as upper-triangular data."""
        S = g * Mat(self.F, self.U) * g.T
        return QuadraticForm(self.F, fold_upper(S).U)

    def is_invariant_under(self, g: Mat) -> bool:
        return self.pullback(g) == self

    # ------------------------------------------------------------------

    def radical(self) -> List[Vector]:
        """Basis of the radical of the polar form {v : B(v, .) = 0}."""
        return self.polar_gram().kernel()

    def is_nondegenerate(self) -> bool:
        return not self.radical()

    def singular_radical_vectors(self) -> List[Vector]:
        """Basis of {v in radical : Q(v) = 0} (mainly of interest at
        p=2, where Q restricted to the radical is Frobenius-semilinear
        and its kernel is a subspace)."""
        F = self.F
        rad = self.radical()
        vals = [self.evaluate(r) for r in rad]
        if all(v == 0 for v in vals):
            return rad
        if F.p != 2:
            # Q on the radical is a nonzero quadratic; keep only the
            # basis combinations that vanish, found by brute pair search
            # (radicals in this suite are tiny)
            pass
        j = next(i for i, v in enumerate(vals) if v)
        out = []
        for i, (r, c) in enumerate(zip(rad, vals)):
            if i == j:
                continue
            if c == 0:
                out.append(r)
            elif F.p == 2:
                lam = F.square_root(F.div(c, vals[j]))
                out.append(tuple(F.add(a, F.mul(lam, b)) for a, b in zip(r, rad[j])))
        return out


def fold_upper(S: Mat) -> QuadraticForm:
    """Upper-triangular representative of the quadratic form v S v^T."""
    F = S.F
    n = S.n
    U = [[0] * n for _ in range(n)]
    for i in range(n):
        U[i][i] = S[i, i]
        for j in range(i + 1, n):
            U[i][j] = F.add(S[i, j], S[j, i])
    return QuadraticForm(F, U)


# ----------------------------------------------------------------------
# invariant-form discovery
# ----------------------------------------------------------------------

def _unknown_index(dim: int):
    pairs = [(a, b) for a in range(dim) for b in range(a, dim)]
    pos = {ab: t for t, ab in enumerate(pairs)}
    return pairs, pos


def invariant_quadratic_space(F: FieldSpec, gens: Sequence[Mat]) -> List[QuadraticForm]:
    """All upper-triangular U with Q(v.g) = Q(v) for every generator.

    Solves the linear system in the dim(dim+1)/2 unknown coefficients.
    A 1-dimensional solution space is normalized so the
    lexicographically first nonzero coefficient is 1.  Each reported
    basis element is re-verified exactly against all generators.
    """
    if not gens:
        raise ValueError("need at least one generator (possibly identity)")
    dim = gens[0].n
    pairs, pos = _unknown_index(dim)
    m = len(pairs)
    basis_vecs = _nullspace_vectorized(F, gens, pairs, m)
    out = []
    for vec in basis_vecs:
        U = [[0] * dim for _ in range(dim)]
        for (a, b), t in pos.items():
            U[a][b] = vec[t]
        Q = QuadraticForm(F, U)
        for g in gens:
            assert Q.is_invariant_under(g), "solver produced a non-invariant form"
        out.append(Q)
    if len(out) == 1:
        vec = [out[0].U[a][b] for (a, b) in pairs]
        lead = next(x for x in vec if x)
        if lead != 1:
            out = [out[0].scale(F.inv(lead))]
    return out


def _constraint_coeff(F: FieldSpec, g: Mat, i: int, j: int, a: int, b: int) -> int:
    """Coefficient of unknown U_ab in fold(g U g^T)_ij."""
    if i == j:
        if a == b:
            return F.mul(g[i, a], g[i, a])
        return F.mul(g[i, a], g[i, b])
    if a == b:
        return F.mul(2 % F.p, F.mul(g[i, a], g[j, a]))
    return F.add(F.mul(g[i, a], g[j, b]), F.mul(g[j, a], g[i, b]))


def nullspace_generic(F, gens, pairs, pos, m):
    """Pure-python reference path (used as an oracle in tests)."""
    rows = []
    for g in gens:
        for (i, j), t in pos.items():
            row = [0] * m
            for (a, b), s in pos.items():
                c = _constraint_coeff(F, g, i, j, a, b)
                if s == t:
                    c = F.sub(c, 1)
                row[s] = c
            if any(row):
                rows.append(row)
    if not rows:
        rows = [[0] * m]
    return Mat(F, rows).right_kernel()


def _nullspace_vectorized(F, gens, pairs, m):
    """Stacked constraint system solved by table-driven numpy RREF."""
    import numpy as np
    if F.np_mul is None:
        pos = {ab: t for t, ab in enumerate(pairs)}
        return nullspace_generic(F, gens, pairs, pos, m)
    add, mul = F.np_add, F.np_mul
    A = np.array([t for (t, _) in pairs], dtype=np.intp)
    B = np.array([t for (_, t) in pairs], dtype=np.intp)
    blocks = []
    ident = np.zeros((m, m), dtype=np.uint8)
    np.fill_diagonal(ident, 1)
    for g in gens:
        G = np.array(g.rows, dtype=np.uint8)
        T1 = mul[G[:, None, :, None], G[None, :, None, :]]    # g_ia g_jb
        C = add[T1, T1.transpose(1, 0, 2, 3)]                 # + g_ja g_ib
        for i in range(g.n):
            C[i, i] = T1[i, i]                                # diagonal rows
        M = C[A, B][:, A, B]                                  # (m, m) constraints
        negrow = np.array([F.neg(x) for x in range(F.q)], dtype=np.uint8)
        M = add[M, negrow[ident]]                             # subtract identity
        blocks.append(M)
    stack = np.concatenate(blocks, axis=0)
    return _kernel_table(F, stack)


def _kernel_table(F, M):
    """Right kernel of a numpy uint8 matrix over a tabled field."""
    import numpy as np
    add, mul = F.np_add, F.np_mul
    neg = np.array([F.neg(x) for x in range(F.q)], dtype=np.uint8)
    inv = np.array([0] + [F.inv(x) for x in range(1, F.q)], dtype=np.uint8)
    M = M.copy()
    n_rows, n_cols = M.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        piv = int(M[r, c])
        if piv != 1:
            M[r] = mul[inv[piv], M[r]]
        col = M[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            prod = mul[col[mask][:, None], M[r][None, :]]
            M[mask] = add[M[mask], neg[prod]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    pivot_set = set(pivots)
    basis = []
    for fc in range(n_cols):
        if fc in pivot_set:
            continue
        vec = [0] * n_cols
        vec[fc] = 1
        for row_idx, pc in enumerate(pivots):
            vec[pc] = F.neg(int(M[row_idx, fc]))
        basis.append(tuple(vec))
    return basis


# ----------------------------------------------------------------------
# quadric counting
# ----------------------------------------------------------------------

def theoretical_quadric_count(dim2m: int, kind: str, q: int) -> int:
    """Number of singular projective points of a nondegenerate form of
    even dimension 2m: (q^(m-1)+1)(q^m-1)/(q-1) for plus type,
    (q^(m-1)-1)(q^m+1)/(q-1) for minus type."""
    if dim2m % 2:
        raise ValueError("even dimension required")
    m = dim2m // 2
    if kind == "plus":
        return (q ** (m - 1) + 1) * (q ** m - 1) // (q - 1)
    if kind == "minus":
        return (q ** (m - 1) - 1) * (q ** m + 1) // (q - 1)
    raise ValueError("kind must be 'plus' or 'minus'")


def parabolic_quadric_count(dim_odd: int, q: int) -> int:
    """Singular projective points in odd dimension 2m+1: (q^2m - 1)/(q-1)."""
    if dim_odd % 2 == 0:
        raise ValueError("odd dimension required")
    m = (dim_odd - 1) // 2
    return (q ** (2 * m) - 1) // (q - 1)


def infer_quadric_type(count: int, dim2m: int, q: int) -> str:
    """Classify a brute-force singular count against both even-type
    formulas; failure to match either is a hard error."""
    for kind in ("plus", "minus"):
        if count == theoretical_quadric_count(dim2m, kind, q):
            return kind
    raise AssertionError(
        f"singular count {count} matches neither quadric type for dim {dim2m}, q={q}")


def count_singular_points(Q: QuadraticForm, budget: int = 2 ** 32,
                          chunk: int = 1 << 20) -> int:
    """Number of canonical projective points with Q = 0, by exhaustive
    (vectorized) enumeration; guarded by a point budget."""
    F = Q.F
    n_points = (F.q ** Q.dim - 1) // (F.q - 1)
    if n_points > budget:
        raise ValueError(
            f"point space has {n_points} canonical points, over the budget {budget}; "
            f"raise the budget only with enough memory/time")
    from .pointspace import PointSpace
    ps = PointSpace(F, Q.dim)
    total = 0
    for _, codes in ps.iter_blocks(chunk):
        vals = ps.eval_form(Q.U, codes)
        total += int((vals == 0).sum())
    return total


def count_singular_points_reference(Q: QuadraticForm) -> int:
    """Pure-python oracle for tiny spaces (cross-check of the
    vectorized path)."""
    import itertools
    F = Q.F
    count = 0
    for lead in range(Q.dim):
        for tail in itertools.product(F.elements(), repeat=Q.dim - lead - 1):
            v = (0,) * lead + (1,) + tail
            if Q.evaluate(v) == 0:
                count += 1
    return count
