"""Orbit-scan engine tests: partitions of small cases, stabilizer
arithmetic, twisted-conjugacy classes, and the tau double-coset
invariants."""

import numpy as np
import pytest

from orbita.cases import build_case
from orbita.field import GF
from orbita.groups import SmallGroup, small_group
from orbita.matrix import Mat
from orbita.quadform import count_singular_points
from orbita.scan import (
    block_gram, orbit_partition, quadric_profile, scan_diagonal_cosets,
    stabilizer_order, tau_invariant, tau_map, twisted_classes,
    witness_matrix, witness_spectrum,
)


# -- orbit partitions ---------------------------------------------------

def test_sym4_q5_partition():
    r = orbit_partition(build_case("A1-sym4", 5))
    assert len(r.orbits) == 4
    assert [o.size for o in r.orbits] == [6, 30, 60, 60]
    assert [o.stab_order for o in r.orbits] == [20, 4, 2, 2]
    assert r.total_singular == 1 + 5 + 25 + 125
    assert r.form_type == "parabolic"


def test_sym4_q7_partition():
    r = orbit_partition(build_case("A1-sym4", 7))
    assert len(r.orbits) == 6
    assert sorted(o.stab_order for o in r.orbits) == [3, 3, 4, 6, 12, 42]
    assert r.total_singular == 1 + 7 + 49 + 343
    assert sum(o.size for o in r.orbits) == r.total_singular


def test_orbit_stabilizer_arithmetic():
    case = build_case("A1-sym4", 5)
    r = orbit_partition(case)
    for o in r.orbits:
        assert o.size * o.stab_order == case.effective_order


def test_sp4sp4_q2_partition():
    case = build_case("Sp4xSp4", 2)
    r = orbit_partition(case)
    assert r.total_singular == 32895
    assert len(r.orbits) == 7
    # every listed representative lies in its own orbit
    locations = [loc for _, loc in r.representatives]
    assert len(locations) == 7 and len(set(locations)) == 7
    assert all(loc.startswith("orbit-") for loc in locations)
    # rank is constant per orbit and recorded
    ranks = {dict(o.invariants)["tensor-rank"] for o in r.orbits}
    assert ranks == {"rank-1", "rank-2", "rank-3", "rank-4"}


def test_sp4sp4_q2_stabilizer_of_v_i():
    case = build_case("Sp4xSp4", 2)
    v_i = next(r.coords for r in case.representatives if r.label == "v_I")
    assert stabilizer_order(case, v_i) == 720


def test_stabilizer_order_matches_partition():
    case = build_case("A1-sym4", 5)
    r = orbit_partition(case)
    assert stabilizer_order(case, r.orbits[0].rep) == 20
    assert stabilizer_order(case, r.orbits[-1].rep) == 2


def test_absent_representative_marked():
    r = orbit_partition(build_case("A3-adjoint-p2", 2))
    assert ("diag(0,1,a,1+a)+<I>", "absent over GF(2)") in r.representatives


def test_budget_refusal_names_count():
    case = build_case("C3-lambda2", 5)
    n = (5 ** 14 - 1) // 4
    with pytest.raises(ValueError, match=str(n)):
        orbit_partition(case, budget=10 ** 6)


def test_determinism_across_worker_counts():
    case = build_case("A2-adjoint", 2)
    a = orbit_partition(case, workers=1)
    b = orbit_partition(case, workers=4)
    da, db = a.to_json_dict(), b.to_json_dict()
    da.pop("elapsed_ms"), db.pop("elapsed_ms")
    assert da == db


def test_report_json_schema():
    d = orbit_partition(build_case("A1-sym4", 5)).to_json_dict()
    assert d["schema"] == "orbita-report/1"
    assert set(d) >= {"case", "q", "form_type", "total_singular",
                      "orbits", "elapsed_ms"}
    for o in d["orbits"]:
        assert set(o) == {"size", "rep", "stab_order", "invariants"}


# -- form profiles ------------------------------------------------------

def test_quadric_profile_matches_brute_force():
    for cid, q in [("A1-sym4", 5), ("A2-adjoint", 2), ("A2-adjoint", 5),
                   ("C3-lambda2", 2), ("Sp4xSp4", 2)]:
        case = build_case(cid, q)
        kind, expected = quadric_profile(case.form)
        assert expected == count_singular_points(case.form)
        if case.dim % 2:
            assert kind == "parabolic"


def test_quadric_profile_types():
    assert quadric_profile(build_case("Sp4xSp4", 2).form)[0] == "plus"
    assert quadric_profile(build_case("C3-lambda2", 2).form)[0] == "minus"
    assert quadric_profile(build_case("B2-adjoint", 5).form)[0] == "plus"


# -- twisted conjugacy --------------------------------------------------

def test_twisted_classes_alt4_trivial():
    r = twisted_classes(small_group("Alt4"))
    assert len(r.classes) == 4
    assert sorted(c for _, c in r.classes) == [3, 3, 4, 12]
    assert sum(s for s, _ in r.classes) == 12


def test_twisted_classes_alt4_outer():
    r = twisted_classes(small_group("Alt4", "conjugation-by-odd-element"))
    assert len(r.classes) == 2
    assert all(c == 2 for _, c in r.classes)
    assert all(s == 6 for s, _ in r.classes)


def test_twisted_classes_trivial_group():
    triv = SmallGroup("triv", ((0,),))
    r = twisted_classes(triv)
    assert r.classes == ((1, 1),)


def test_twisted_classes_rejects_non_automorphism():
    G = small_group("Alt4")
    swap = dict(zip(G.elements, reversed(G.elements)))
    with pytest.raises(ValueError):
        twisted_classes(G, sigma=lambda x: swap[x])


def test_twisted_classes_sym4():
    r = twisted_classes(small_group("Sym4"))
    assert sum(s for s, _ in r.classes) == 24
    assert len(r.classes) == 5    # ordinary conjugacy classes


# -- tau double cosets --------------------------------------------------

def test_tau_is_involution_and_fixes_symplectic():
    F = GF(7)
    J = block_gram(F, 6)
    rng = np.random.default_rng(5)
    found = 0
    while found < 5:
        v = [int(x) for x in rng.integers(0, 7, size=6)]
        vJ = (Mat(F, [v]) * J).rows[0]
        g = Mat(F, [[F.add(1 if i == j else 0, F.mul(v[i], vJ[j]))
                     for j in range(6)] for i in range(6)])
        if g.det() == 0:
            continue
        found += 1
        assert g * J * g.T == J            # symplectic transvection
        assert tau_map(g) == g
        assert tau_map(tau_map(g)) == g
        assert tau_invariant(g) == [1] * 6


def test_tau_usage_errors():
    F = GF(7)
    with pytest.raises(ValueError):
        tau_map(Mat.zero(F, 6, 6))
    with pytest.raises(ValueError):
        tau_map(Mat.identity(F, 5))


def test_witness_q7():
    A = witness_matrix(7, 1, 2)
    assert A.det() == 1
    assert tau_invariant(A) == witness_spectrum(7, 1, 2)
    assert sorted(witness_spectrum(7, 1, 2)) == [1, 1, 2, 2, 4, 4]
    with pytest.raises(ValueError):
        witness_matrix(7, 1, 3)    # 1 + b^2 c + b c^2 != 0


def test_diagonal_coset_counts_increase():
    counts = [scan_diagonal_cosets(q) for q in (7, 13, 19)]
    assert counts == [10, 19, 61]
    assert counts[0] < counts[1] < counts[2]
