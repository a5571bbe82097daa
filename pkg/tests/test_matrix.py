"""Matrix-layer tests: elimination and polynomial machinery against
brute-force oracles at small sizes."""

import itertools

import pytest

from orbita.field import GF
from orbita.matrix import (
    Mat, ProjectivePoint, canonical_point, charpoly, eigenvalue_multiset,
    is_nilpotent, is_semisimple, minimal_polynomial, poly_divmod, poly_eval,
    poly_gcd, poly_is_squarefree, poly_mul, poly_trim, solve_linear,
)


def brute_charpoly(M):
    """det(xI - M) by cofactor expansion with polynomial entries."""
    F = M.F
    n = M.n
    entries = [[([F.neg(M[i, j])] if i != j else [F.neg(M[i, j]), 1])
                for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if not cols:
            return [1]
        i = rows[0]
        acc = []
        for idx, j in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(F, entries[i][j], minor)
            if idx % 2:
                term = [F.neg(c) for c in term]
            # accumulate
            m = max(len(acc), len(term))
            acc = [F.add(acc[t] if t < len(acc) else 0,
                         term[t] if t < len(term) else 0) for t in range(m)]
        return poly_trim(acc)

    return det(list(range(n)), list(range(n)))


def rand_mats(F, n, count, seed=7):
    import random
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(Mat(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]))
    return out


def test_mat_basics():
    F = GF(5)
    A = Mat(F, [[1, 2], [3, 4]])
    I = Mat.identity(F, 2)
    assert A * I == A and I * A == A
    assert (A + A) == A.scale(2)
    assert A.T.T == A
    assert A.trace() == 0  # 1+4 = 5 = 0
    B = A.inverse()
    assert A * B == I and B * A == I


def test_mul_associative_spot():
    F = GF(4)
    for A, B, C in zip(rand_mats(F, 3, 5, 1), rand_mats(F, 3, 5, 2), rand_mats(F, 3, 5, 3)):
        assert (A * B) * C == A * (B * C)


def test_det_and_rank():
    F = GF(7)
    A = Mat(F, [[2, 0, 0], [0, 3, 0], [0, 0, 4]])
    assert A.det() == (2 * 3 * 4) % 7
    assert A.rank() == 3
    B = Mat(F, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert B.det() == 0 and B.rank() == 2


def test_solve_linear_identity_and_zero():
    F = GF(3)
    I = Mat.identity(F, 3)
    sol = solve_linear(I, (1, 2, 0))
    assert sol is not None
    part, ker = sol
    assert part == (1, 2, 0) and ker == []
    Z = Mat.zero(F, 3, 3)
    part, ker = solve_linear(Z, (0, 0, 0))
    assert len(ker) == 3


def test_solve_linear_gf2_example():
    F = GF(2)
    A = Mat(F, [[1, 1], [0, 0]])
    sol = solve_linear(A, (1, 0))
    assert sol is not None
    part, ker = sol
    sols = {part}
    for k in ker:
        sols.add(tuple(F.add(a, b) for a, b in zip(part, k)))
    # oracle: enumerate all 4 column vectors
    brute = {v for v in itertools.product(range(2), repeat=2)
             if A.T.apply(v) == (1, 0)}
    assert sols == brute == {(1, 0), (0, 1)}


def test_solve_inconsistent():
    F = GF(5)
    A = Mat(F, [[1, 1], [2, 2]])  # row 2 = 2 * row 1
    assert solve_linear(A, (1, 3)) is None
    assert solve_linear(A, (1, 2)) is not None


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (5, 4), (7, 4)])
def test_charpoly_matches_cofactor_oracle(q, n):
    F = GF(q)
    for M in rand_mats(F, n, 8, seed=q * 10 + n):
        assert charpoly(M) == brute_charpoly(M)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_minpoly_exhaustive_small(q, n):
    F = GF(q)
    for entries in itertools.product(range(q), repeat=n * n):
        M = Mat(F, [entries[i * n:(i + 1) * n] for i in range(n)])
        mp = minimal_polynomial(M)
        # annihilates
        acc = Mat.zero(F, n, n)
        P = Mat.identity(F, n)
        for c in mp:
            acc = acc + P.scale(c)
            P = P * M
        assert acc.is_zero()
        # divides charpoly
        _, rem = poly_divmod(F, charpoly(M), mp)
        assert not rem
        # nilpotency cross-check
        assert is_nilpotent(M) == (M ** n).is_zero()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_minpoly_random_4x4(q):
    F = GF(q)
    for M in rand_mats(F, 4, 12, seed=q):
        mp = minimal_polynomial(M)
        acc = Mat.zero(F, 4, 4)
        P = Mat.identity(F, 4)
        for c in mp:
            acc = acc + P.scale(c)
            P = P * M
        assert acc.is_zero()
        _, rem = poly_divmod(F, charpoly(M), mp)
        assert not rem


def test_jordan_block_predicates():
    F = GF(5)
    J = Mat(F, [[0, 1], [0, 0]])
    assert minimal_polynomial(J) == [0, 0, 1]
    assert is_nilpotent(J) and not is_semisimple(J)
    I = Mat.identity(F, 3)
    assert minimal_polynomial(I) == [F.neg(1), 1]
    assert is_semisimple(I) and not is_nilpotent(I)


def test_semisimple_diag_gf4():
    F = GF(4)
    a = F.gen  # root of x^2+x+1
    assert F.add(F.add(F.mul(a, a), a), 1) == 0
    M = Mat.diag(F, [0, 1, a, F.add(1, a)])
    mp = minimal_polynomial(M)
    assert len(mp) == 5  # degree 4, distinct eigenvalues
    assert poly_is_squarefree(F, mp)
    assert is_semisimple(M) and not is_nilpotent(M)


def test_squarefree_char_p_adjustment():
    F = GF(2)
    # x^2 + 1 = (x+1)^2 has zero derivative: must be flagged non-squarefree
    assert not poly_is_squarefree(F, [1, 0, 1])
    assert poly_is_squarefree(F, [1, 1, 1])


def test_eigenvalue_multiset_identity():
    F = GF(7)
    I = Mat.identity(F, 4)
    assert eigenvalue_multiset(I) == [1, 1, 1, 1]


def test_eigenvalue_multiset_extension():
    F = GF(7)
    # companion of x^2+1: eigenvalues are the square roots of -1 in GF(49)
    M = Mat(F, [[0, 1], [6, 0]])
    assert eigenvalue_multiset(M, 1) is None   # -1 is not a square mod 7
    ev = eigenvalue_multiset(M, 2)
    E = GF(49)
    assert ev is not None and len(ev) == 2
    for w in ev:
        assert E.mul(w, w) == E.pack([6, 0])   # w^2 = -1


def test_poly_eval_and_gcd():
    F = GF(5)
    f = poly_mul(F, [1, 1], [2, 1])  # (x+1)(x+2)
    assert poly_eval(F, f, F.neg(1)) == 0
    assert poly_gcd(F, f, [1, 1]) == [1, 1]


def test_canonical_point():
    F = GF(7)
    pt = canonical_point(F, (0, 2, 4))
    assert pt.coords == (0, 1, 2)
    assert canonical_point(F, (1, 3, 5)).coords == (1, 3, 5)
    with pytest.raises(ValueError):
        canonical_point(F, (0, 0, 0))


def test_canonical_point_scalar_classes_exhaustive_gf3():
    F = GF(3)
    for v in itertools.product(range(3), repeat=3):
        if not any(v):
            continue
        keys = set()
        for lam in F.nonzero():
            keys.add(canonical_point(F, tuple(F.mul(lam, x) for x in v)).key)
        assert len(keys) == 1
        # idempotent
        pt = canonical_point(F, v)
        assert canonical_point(F, pt.coords) == pt


def test_keys_injective_gf4():
    F = GF(4)
    keys = {}
    for v in itertools.product(range(4), repeat=3):
        if not any(v):
            continue
        pt = canonical_point(F, v)
        if pt.key in keys:
            assert keys[pt.key] == pt.coords
        keys[pt.key] = pt.coords
    assert len(keys) == (4 ** 3 - 1) // 3
