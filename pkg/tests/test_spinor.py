"""Clifford algebra and half-spin module: defining relations, the spin
action as an algebra map, torus/root identities, the characteristic-2
quadratic form, and the explicit fixing generators."""

import random

import pytest

from orbita.field import GF
from orbita.spinor import (
    Cliff, Spinor, as_spinor, clifford_mul, exp_quadratic, format_clifford,
    parse_clifford, root_element, spin_action, spin_quadratic, torus_element,
    vector_action,
)

F2, F4, F8, F16, F64 = GF(2), GF(4), GF(8), GF(16), GF(64)


def S(F, text):
    return Spinor.from_string(F, text)


def rand_cliff(F, rng, nterms=4, even=False):
    t = {}
    while len(t) < nterms:
        e, f = rng.randrange(128), rng.randrange(128)
        if even and (bin(e).count("1") + bin(f).count("1")) % 2:
            continue
        t[(e, f)] = rng.randrange(1, F.q)
    return Cliff(F, t)


# -- algebra ------------------------------------------------------------

def test_defining_relations():
    one = Cliff.one(F4)
    for i in range(1, 8):
        e, f = Cliff.gen_e(F4, i), Cliff.gen_f(F4, i)
        assert e * f + f * e == one
        assert (e * e).is_zero() and (f * f).is_zero()
    gens = [Cliff.gen_e(F4, i) for i in range(1, 8)] + \
        [Cliff.gen_f(F4, i) for i in range(1, 8)]
    for a in range(14):
        for b in range(14):
            if a == b or abs(a - b) == 7:
                continue
            assert (gens[a] * gens[b] + gens[b] * gens[a]).is_zero()


def test_associativity_and_reversal_signs():
    # odd characteristic exercises the sign bookkeeping
    F = GF(3)
    rng = random.Random(0)
    for _ in range(40):
        a, b, c = (rand_cliff(F, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a * b).reversal() == b.reversal() * a.reversal()
    x = rand_cliff(F, rng)
    assert x.reversal().reversal() == x


def test_torus_and_root_inverses():
    one = Cliff.one(F64)
    for lam in (1, 2, 3, 17, 62):
        s = torus_element(F64, 7, lam)
        assert clifford_mul(s, torus_element(F64, 7, F64.inv(lam))) == one
        assert s.inverse() == torus_element(F64, 7, F64.inv(lam))
        r = root_element(F64, 4, 7, lam)
        assert r.inverse() == root_element(F64, 4, 7, F64.neg(lam))
    # exp u over commuting monomial supports multiplies term by term
    u = exp_quadratic(F8, [(1, 2, 3), (10, 11, 5)])
    assert u == root_element(F8, 1, 2, 3) * root_element(F8, 10, 11, 5)
    assert exp_quadratic(F8, []) == Cliff.one(F8)


def test_errors():
    with pytest.raises(ValueError):
        Cliff.gen_e(F2, 8)
    with pytest.raises(ValueError):
        root_element(F4, 3, 10, 1)      # w_3 and w_10 pair to 1
    with pytest.raises(ValueError):
        torus_element(F4, 2, 0)
    with pytest.raises(ValueError):
        root_element(F4, 1, 2, 1, convention="bogus")
    with pytest.raises(ValueError):
        spin_action(Cliff.gen_e(F4, 1), S(F4, "1"))
    with pytest.raises(ValueError):
        spin_quadratic(S(GF(5), "1 + f1f2f3f4f5f6"))


# -- spin action --------------------------------------------------------

def test_algebra_map_property():
    for F in (F2, F4, F8):
        rng = random.Random(F.q)
        basis = [Spinor(F, {m: 1}) for m in range(128)
                 if bin(m).count("1") % 2 == 0]
        assert len(basis) == 64
        for _ in range(3):
            s, t = rand_cliff(F, rng, even=True), rand_cliff(F, rng, even=True)
            st = clifford_mul(s, t)
            for x in basis:
                assert spin_action(st, x) == spin_action(s, spin_action(t, x))


def test_wedge_contract_relations():
    basis = [Spinor(F4, {m: 1}) for m in range(128)]
    for i in range(1, 8):
        e, f = Cliff.gen_e(F4, i), Cliff.gen_f(F4, i)
        for x in basis:
            ex = spin_action(e, x, require_even=False)
            fx = spin_action(f, x, require_even=False)
            assert spin_action(f, ex, require_even=False) + \
                spin_action(e, fx, require_even=False) == x
            assert spin_action(e, ex, require_even=False).is_zero()
            assert spin_action(f, fx, require_even=False).is_zero()


# -- the five torus/root identities ------------------------------------

X_I = "1 + f1f2f3f7 + f4f5f6f7 + f1f2f3f4f5f6"
X_II = "1 + f1f2f3f4f5f6"
X_III = "1 + f1f2f3f7 + f1f5f6f7 + f2f4f6f7 + f1f2f3f4f5f6"
X_IV = "1 + f1f2f3f7 + f1f2f3f4f5f6"
X_V = "1 + f1f2f3f7 + f1f5f6f7 + f1f2f3f4f5f6"


def rhs_i(F, lam):
    li = F.inv(lam)
    return S(F, X_II).smul(li) + S(F, "f1f2f3f7 + f4f5f6f7").smul(lam)


def rhs_iii(F, lam):
    li = F.inv(lam)
    return S(F, X_II).smul(li) + \
        S(F, "f1f2f3f7 + f1f5f6f7 + f2f4f6f7").smul(lam)


def rhs_iv(F, lam):
    return S(F, X_II).smul(F.inv(lam)) + S(F, "f1f2f3f7").smul(lam)


def rhs_v(F, lam):
    li = F.inv(lam)
    return S(F, "1 + f1f2f3f7 + f1f5f6f7 + f1f2f3f5f6f7").smul(li) + \
        S(F, "f1f2f3f4f5f6").smul(lam)


def test_torus_identities_all_lambda_gf64():
    # identity degree in lambda is at most 2, far below the 63 sample
    # points, so sampling all of GF(64)* is a proof
    F = F64
    for lam in range(1, 64):
        s7 = torus_element(F, 7, lam)
        assert spin_action(s7, S(F, X_I)) == rhs_i(F, lam)
        assert spin_action(s7, S(F, X_II)) == S(F, X_II).smul(F.inv(lam))
        assert spin_action(s7, S(F, X_III)) == rhs_iii(F, lam)
        assert spin_action(s7, S(F, X_IV)) == rhs_iv(F, lam)


def test_composite_identity_all_lambda_gf64():
    # the composite torus/root identity: the essential factors are the
    # torus at index 4 and the root element on the pair (w7, w11); the
    # two auxiliary root factors of the printed product lie in the
    # stabilizer of both sides when read in the unreversed convention
    # (the pair (4,14) then names e4 and f1)
    F = F64
    aux = [root_element(F, 4, 7, 1, convention="original"),
           root_element(F, 4, 8, 1, convention="original")]
    for lam in range(1, 64):
        x, want = S(F, X_V), rhs_v(F, lam)
        g = torus_element(F, 4, lam) * aux[0] * aux[1] * \
            root_element(F, 7, 11, 1)
        assert spin_action(g, x) == want
        # minimal form of the same identity
        g0 = torus_element(F, 4, lam) * root_element(F, 7, 11, 1)
        assert spin_action(g0, x) == want
        for a in aux:
            assert spin_action(a, x) == x
            assert spin_action(a, want) == want


# -- quadratic form -----------------------------------------------------

def test_spin_quadratic_basics():
    assert spin_quadratic(S(F64, X_II)) == 1
    for mono in ("f1f2f3f4", "f1f2f3f7", "1", "f1f2f3f4f5f6f7"):
        assert spin_quadratic(S(F64, mono)) == 0
    for lam in range(2, 64):
        val = F64.add(lam, F64.inv(lam))
        assert spin_quadratic(rhs_i(F64, lam)) == F64.mul(val, val)


def test_representative_singularity():
    reps = {
        2: "1",
        3: "1 + f1f2f3f4",
        4: "1 + f1f2f3f4f5f6",
        5: "1 + f1f2f3f7 + f1f2f3f4f5f6",
        6: "1 + f1f2f3f7 + f4f5f6f7 + f1f2f3f4f5f6",
        7: "1 + f1f2f3f7 + f1f5f6f7 + f1f2f3f4f5f6",
        8: "1 + f1f2f3f7 + f1f5f6f7 + f2f4f6f7 + f1f2f3f4f5f6",
        9: "1 + f1f2f3f4 + f3f4f5f6",
        10: "1 + f1f2f3f4 + f3f4f5f6 + f1f3f6f7",
    }
    singular = {2, 3, 6, 9, 10}
    for t, text in reps.items():
        q = spin_quadratic(S(F16, text))
        assert (q == 0) == (t in singular), t
    # the type-6 family is singular for every scalar multiple
    for lam in range(1, 16):
        assert spin_quadratic(S(F16, reps[6]).smul(lam)) == 0


def test_split_orbit_images_nonsingular():
    F = F64
    for lam in range(2, 64):        # lam != 0, 1
        assert spin_quadratic(rhs_i(F, lam)) != 0
        assert spin_quadratic(S(F, X_II).smul(F.inv(lam))) != 0
        assert spin_quadratic(rhs_iii(F, lam)) != 0
        assert spin_quadratic(rhs_iv(F, lam)) != 0
        assert spin_quadratic(rhs_v(F, lam)) != 0


# -- fixing generators --------------------------------------------------

def _letter(F, tok):
    return Cliff.gen_e(F, int(tok[1])) if tok[0] == "e" else \
        Cliff.gen_f(F, int(tok[1]))


def test_unipotent_fixing_list():
    # the 24 single root subgroups of the unipotent radical fixing
    # 1+f1f2f3f4+f3f4f5f6, read with the letters as printed
    F = F16
    x = S(F, "1 + f1f2f3f4 + f3f4f5f6")
    one = Cliff.one(F)
    ys = []
    for i in range(1, 7):
        ys.append(_letter(F, f"e7") * _letter(F, f"e{i}"))
        ys.append(_letter(F, f"e7") * _letter(F, f"f{i}"))
    for a, b in [("e1", "f3"), ("e1", "f4"), ("e1", "e5"), ("e1", "e6"),
                 ("e2", "f3"), ("e2", "f4"), ("e2", "e5"), ("e2", "e6"),
                 ("f3", "e5"), ("f3", "e6"), ("f4", "e5"), ("f4", "e6")]:
        ys.append(_letter(F, a) * _letter(F, b))
    assert len(ys) == 24
    for y in ys:
        for lam in range(1, 16):
            assert spin_action(one + y.smul(lam), x) == x


def test_unipotent_fixing_pairs_and_degenerate_correction():
    F = F16
    x = S(F, "1 + f1f2f3f4 + f3f4f5f6")
    one = Cliff.one(F)

    def pair(a, b, c, d, lam):
        return (one + (_letter(F, a) * _letter(F, b)).smul(lam)) * \
            (one + (_letter(F, c) * _letter(F, d)).smul(lam))

    for lam in range(1, 16):
        assert spin_action(pair("e1", "e2", "f3", "f4", lam), x) == x
    # the second printed pair has a degenerate (square) second factor;
    # of the two plausible corrections only f3f4 restores a fixing
    # element, f4f5 does not
    assert all(spin_action(pair("e5", "e6", "f3", "f4", lam), x) == x
               for lam in range(1, 16))
    assert not all(spin_action(pair("e5", "e6", "f4", "f5", lam), x) == x
                   for lam in range(1, 16))


def test_semisimple_fixing_triple():
    # the three products of root-element pairs generating the
    # semisimple part of the stabilizer of the three-term spinor,
    # translated through the legacy index dictionary
    F = F16
    x = S(F, "1 + f1f2f3f4 + f3f4f5f6 + f1f3f6f7")
    for (i1, j1), (i2, j2) in [((2, 10), (4, 13)), ((6, 8), (3, 12)),
                               ((5, 7), (11, 13))]:
        for lam in range(1, 16):
            g = root_element(F, i1, j1, lam, convention="legacy") * \
                root_element(F, i2, j2, lam, convention="legacy")
            assert spin_action(g, x) == x


# -- vector action ------------------------------------------------------

def v14(F, **kw):
    out = [0] * 14
    for tok, c in kw.items():
        idx = int(tok[1]) - 1 + (0 if tok[0] == "e" else 7)
        out[idx] = c
    return tuple(out)


def q14(F, v):
    acc = 0
    for i in range(7):
        acc = F.add(acc, F.mul(v[i], v[7 + i]))
    return acc


def test_vector_action_torus():
    F = F64
    v = v14(F, e7=1, f7=1)
    assert vector_action(Cliff.one(F), v) == v
    for alpha in range(2, 64):
        lam = F.square_root(alpha)
        got = vector_action(torus_element(F, 7, lam, convention="original"), v)
        assert got == v14(F, e7=alpha, f7=F.inv(alpha))


def test_vector_action_root_fixes_orthogonal_vectors():
    F = F8
    s = root_element(F, 1, 2, 3)        # 1 + 3 f1 f2
    for tok in ("e3", "f3", "f1", "f2", "e4", "f7"):
        v = v14(F, **{tok: 1})
        assert vector_action(s, v) == v
    # and it moves a vector pairing nontrivially with the support
    assert vector_action(s, v14(F, e1=1)) != v14(F, e1=1)


def test_vector_action_preserves_form():
    F = F8
    rng = random.Random(5)
    els = [torus_element(F, 3, 5), root_element(F, 2, 12, 4),
           root_element(F, 1, 13, 6)]
    for s in els:
        for _ in range(20):
            v = tuple(rng.randrange(8) for _ in range(14))
            assert q14(F, vector_action(s, v)) == q14(F, v)


# -- parsing ------------------------------------------------------------

def test_parse_clifford():
    F = F4
    assert parse_clifford(F, "e1f1 + f1e1") == Cliff.one(F)
    assert parse_clifford(F, "s7(2)") == torus_element(F, 7, 2)
    assert parse_clifford(F, "s4,14(1)") == root_element(F, 4, 14, 1)
    assert parse_clifford(F, "s{4,14}(1)") == root_element(F, 4, 14, 1)
    assert parse_clifford(F, "exp(1,2:3)") == root_element(F, 1, 2, 3)
    assert parse_clifford(F, "2 e1 e2") == \
        (Cliff.gen_e(F, 1) * Cliff.gen_e(F, 2)).smul(2)
    with pytest.raises(ValueError):
        parse_clifford(F, "qq")
    sp = as_spinor(parse_clifford(F2, "1 + f1f2f3f4f5f6"))
    assert sp is not None and spin_quadratic(sp) == 1
    assert as_spinor(parse_clifford(F2, "e1f2")) is None
    assert format_clifford(Cliff.one(F2)) == "1*1"
