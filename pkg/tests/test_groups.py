"""Generator-set validation: closure sizes against classical order
formulas, form preservation, and small permutation groups."""

import itertools

import pytest

from orbita.field import GF
from orbita.groups import (
    GroupSpec, block_to_interleaved, classical_generators, closure_size,
    group_order, plus_quadratic_form, small_group, symplectic_gram,
)
from orbita.matrix import Mat, canonical_point


def test_order_formulas():
    assert group_order("SL", 2, 5) == 120
    assert group_order("SL", 4, 2) == 20160
    assert group_order("Sp", 4, 2) == 720
    assert group_order("Sp", 6, 2) == 1451520
    assert group_order("OmegaPlus", 8, 2) == 174182400
    assert group_order("PGL2", 2, 5) == 120
    assert group_order("PGL2", 2, 7) == 336


@pytest.mark.parametrize("family,n,q,expect", [
    ("SL", 2, 2, 6),
    ("SL", 2, 3, 24),
    ("SL", 2, 4, 60),
    ("SL", 2, 5, 120),
    ("SL", 3, 2, 168),
    ("SL", 3, 3, 5616),
    ("SL", 4, 2, 20160),
    ("Sp", 4, 2, 720),
    ("Sp", 4, 3, 51840),
])
def test_closure_matches_order(family, n, q, expect):
    G = classical_generators(family, n, q)
    assert G.order == expect == group_order(family, n, q)
    assert closure_size(G.generators, limit=10 ** 6) == expect


@pytest.mark.parametrize("q,expect", [(2, 6), (3, 24), (4, 60), (5, 120), (7, 336)])
def test_pgl2_projective_closure(q, expect):
    G = classical_generators("PGL2", 2, q)
    assert G.order == expect
    assert closure_size(G.generators, limit=10 ** 6, projective=True) == expect


def test_symplectic_gram_pairing():
    F = GF(3)
    J = symplectic_gram(F, 6)
    n = 3
    for i in range(1, n + 1):
        e = tuple(1 if t == i - 1 else 0 for t in range(6))
        f = tuple(1 if t == 6 - i else 0 for t in range(6))
        # B(e_i, f_i) = 1, B(f_i, e_i) = -1
        assert J.apply(e)[6 - i] == 1
        assert J.apply(f)[i - 1] == F.neg(1)
    assert (J + J.T).is_zero()


def test_block_to_interleaved_conjugates_gram():
    F = GF(5)
    deg, n = 6, 3
    Jb = [[0] * deg for _ in range(deg)]
    for i in range(n):
        Jb[i][n + i] = 1
        Jb[n + i][i] = F.neg(1)
    Jb = Mat(F, Jb)
    P = block_to_interleaved(F, deg)
    assert P * symplectic_gram(F, deg) * P.T == Jb


def test_sp_generators_preserve_form_large():
    # constructor asserts per generator; exercise q with k > 1 too
    for q, deg in [(2, 8), (3, 6), (4, 4), (5, 6), (9, 4)]:
        G = classical_generators("Sp", deg, q)
        J = G.gram
        for g in G.generators:
            assert g * J * g.T == J
            assert g.det() == 1


def test_omega_plus_generators():
    G = classical_generators("OmegaPlus", 8, 2)
    Q = G.quad
    assert G.order == 174182400
    for g in G.generators:
        assert Q.is_invariant_under(g)
        assert g.det() == 1
    # transitive on the 135 singular points of the natural module
    F = G.F
    e1 = (1, 0, 0, 0, 0, 0, 0, 0)
    seen = {canonical_point(F, e1).key}
    frontier = [e1]
    while frontier:
        new = []
        for v in frontier:
            for g in G.generators:
                w = g.apply(v)
                k = canonical_point(F, w).key
                if k not in seen:
                    seen.add(k)
                    new.append(w)
        frontier = new
    assert len(seen) == 135  # (q^3+1)(q^4-1)/(q-1) at q=2


def test_sl_generators_span_field():
    # over GF(4) the upper-triangular generators use both basis digits
    G = classical_generators("SL", 2, 4)
    uppers = {g[0, 1] for g in G.generators if g[0, 1]}
    assert uppers == {1, G.F.gen}


def test_small_group_orders_and_classes():
    A4 = small_group("Alt4")
    S4 = small_group("Sym4")
    assert A4.order == 12 and S4.order == 24
    cls = A4.conjugacy_classes()
    assert sorted(len(c) for c in cls) == [1, 3, 4, 4]
    # centralizer orders 12, 4, 3, 3
    assert sorted(A4.order // len(c) for c in cls) == [3, 3, 4, 12]
    s_cls = S4.conjugacy_classes()
    assert sorted(len(c) for c in s_cls) == [1, 3, 6, 6, 8]


def test_small_group_sigma_options():
    A4 = small_group("Alt4", "conjugation-by-odd-element")
    elset = set(A4.elements)
    ident = A4.identity()
    for a in A4.elements:
        sa = A4.sigma(a)
        assert sa in elset
        # involutive automorphism
        assert A4.sigma(sa) == a
    assert A4.sigma(ident) == ident
    with pytest.raises(ValueError):
        small_group("Alt5")
    with pytest.raises(ValueError):
        small_group("Alt4", "bogus")
