"""Exact orbit machinery on singular projective 1-spaces.

orbit_partition splits the singular canonical points of a module case
into orbits under the generator images by breadth-first closure over a
global visited bitmap.  Small spaces are enumerated exhaustively; for
spaces too large to enumerate (but still within the 2^32 point budget)
seeds are drawn by deterministic random sampling and the scan stops
when the accumulated orbit sizes reach the theoretical quadric count,
which proves the partition is complete.

Also here: single-point stabilizer orders, twisted-conjugacy classes
of small explicit groups, and the tau-twist double-coset invariants
for diagonal symplectic elements.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cases import ModuleCase
from .field import GF, FieldSpec
from .groups import SmallGroup, Perm, _pinv
from .matrix import Mat, ProjectivePoint, canonical_point, eigenvalue_multiset
from .pointspace import PointSpace, blowup_matrix
from .quadform import (QuadraticForm, parabolic_quadric_count,
                       theoretical_quadric_count)

POINT_BUDGET = 2 ** 32
FULL_SCAN_LIMIT = 1 << 27      # above this, sample seeds instead of enumerating


# ----------------------------------------------------------------------
# form type and theoretical singular count
# ----------------------------------------------------------------------

def _absolute_trace(F: FieldSpec, a: int) -> int:
    t, x = 0, a
    for _ in range(F.k):
        t = F.add(t, x)
        x = F.mul(x, x)
    return t


def _arf_invariant(Q: QuadraticForm) -> int:
    """Sum of Q(u_i)Q(v_i) over a symplectic basis (p = 2, even dim)."""
    F = Q.F
    P = Q.polar_gram()

    def bilin(u, v):
        acc = 0
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = P.rows[i]
            for j, vj in enumerate(v):
                if vj and row[j]:
                    acc = F.add(acc, F.mul(ui, F.mul(row[j], vj)))
        return acc

    rem = [tuple(1 if j == i else 0 for j in range(Q.dim)) for i in range(Q.dim)]
    arf = 0
    while rem:
        u = rem.pop(0)
        j = next(i for i, w in enumerate(rem) if bilin(u, w))
        v = rem.pop(j)
        c = F.inv(bilin(u, v))
        v = tuple(F.mul(c, x) for x in v)
        rem = [tuple(F.add(w[t], F.add(F.mul(bilin(w, v), u[t]),
                                       F.mul(bilin(w, u), v[t])))
                     for t in range(Q.dim)) for w in rem]
        arf = F.add(arf, F.mul(Q.evaluate(u), Q.evaluate(v)))
    return arf


def quadric_profile(Q: QuadraticForm) -> Tuple[str, int]:
    """('plus'|'minus'|'parabolic', theoretical singular-point count)."""
    F, dim, q = Q.F, Q.dim, Q.F.q
    if dim % 2:
        return "parabolic", parabolic_quadric_count(dim, q)
    m = dim // 2
    if F.p == 2:
        kind = "plus" if _absolute_trace(F, _arf_invariant(Q)) == 0 else "minus"
    else:
        half = F.inv(2)
        B = [[Q.U[i][i] if i == j else
              F.mul(half, F.add(Q.U[min(i, j)][max(i, j)], 0))
              for j in range(dim)] for i in range(dim)]
        disc = Mat(F, B).det()
        if m % 2:
            disc = F.neg(disc)
        kind = "plus" if F.pow(disc, (q - 1) // 2) == 1 else "minus"
    return kind, theoretical_quadric_count(dim, kind, q)


# ----------------------------------------------------------------------
# visited bitmap
# ----------------------------------------------------------------------

def _bitmap(n_points: int) -> np.ndarray:
    return np.zeros((n_points + 7) // 8, dtype=np.uint8)


def _bits_test(bm: np.ndarray, idx: np.ndarray) -> np.ndarray:
    return (bm[idx >> 3] >> (idx & 7).astype(np.uint8)) & 1


def _bits_set(bm: np.ndarray, idx: np.ndarray) -> None:
    np.bitwise_or.at(bm, idx >> 3,
                     np.left_shift(np.uint8(1), (idx & 7).astype(np.uint8)))


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitInfo:
    size: int
    rep: Tuple[int, ...]          # canonical coordinates
    rep_index: int
    stab_order: int
    invariants: Tuple[Tuple[str, str], ...] = ()


@dataclass(frozen=True)
class OrbitReport:
    case: str
    q: int
    form_type: str
    total_singular: int
    orbits: Tuple[OrbitInfo, ...]
    representatives: Tuple[Tuple[str, str], ...]   # (label, location)
    elapsed_ms: int

    def to_json_dict(self) -> dict:
        return {
            "schema": "orbita-report/1",
            "case": self.case,
            "q": self.q,
            "form_type": self.form_type,
            "total_singular": self.total_singular,
            "orbits": [{
                "size": o.size,
                "rep": list(o.rep),
                "stab_order": o.stab_order,
                "invariants": dict(o.invariants),
            } for o in self.orbits],
            "representatives": [list(r) for r in self.representatives],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_text(self) -> str:
        lines = [f"{self.case} over GF({self.q}): {len(self.orbits)} orbits "
                 f"on {self.total_singular} singular points "
                 f"({self.form_type} quadric)"]
        for i, o in enumerate(self.orbits, 1):
            inv = "".join(f"  {k}={v}" for k, v in o.invariants)
            lines.append(f"  orbit {i}: size {o.size}  stab {o.stab_order}"
                         f"  rep {list(o.rep)}{inv}")
        for label, loc in self.representatives:
            lines.append(f"  representative {label}: {loc}")
        lines.append(f"  elapsed {self.elapsed_ms} ms")
        return "\n".join(lines)


@dataclass(frozen=True)
class TwistedClassReport:
    group: str
    sigma: str
    classes: Tuple[Tuple[int, int], ...]   # (size, centralizer order)


# ----------------------------------------------------------------------
# orbit BFS core
# ----------------------------------------------------------------------

class _Scanner:
    def __init__(self, case: ModuleCase, chunk: int):
        self.case = case
        self.ps = PointSpace(case.F, case.dim)
        self.blown = [blowup_matrix(g) for g in case.gens]
        self.stack = np.hstack(self.blown)
        self.chunk = chunk
        self.visited = _bitmap(self.ps.n_points)

    def closure(self, seed: int, sample_cap: int = 1024):
        """Breadth-first orbit of one seed index.

        Returns (size, min_index, samples) where samples are up to
        sample_cap member indices.
        """
        ps, visited = self.ps, self.visited
        frontier = np.array([seed], dtype=np.int64)
        _bits_set(visited, frontier)
        size = 0
        min_index = seed
        samples: List[np.ndarray] = []
        n_sampled = 0
        while frontier.size:
            size += frontier.size
            if n_sampled < sample_cap:
                take = frontier[:sample_cap - n_sampled]
                samples.append(take)
                n_sampled += take.size
            m = int(frontier.min())
            if m < min_index:
                min_index = m
            nxt: List[np.ndarray] = []
            for lo in range(0, frontier.size, self.chunk):
                codes = ps.decode(frontier[lo:lo + self.chunk])
                for img in ps.act_all(codes, self.stack):
                    idx = ps.encode(img)
                    idx = idx[_bits_test(self.visited, idx) == 0]
                    if idx.size:
                        # images of distinct points are distinct, and
                        # bits are set before the next batch is tested
                        _bits_set(self.visited, idx)
                        nxt.append(idx)
            frontier = (np.concatenate(nxt) if nxt
                        else np.empty(0, dtype=np.int64))
        sample = (np.concatenate(samples) if samples
                  else np.empty(0, dtype=np.int64))
        return size, min_index, sample


def _orbit_invariants(case: ModuleCase, scanner: _Scanner, rep_index: int,
                      sample: np.ndarray) -> Tuple[Tuple[str, str], ...]:
    if case.invariant_fn is None:
        return ()
    others = sample[sample != rep_index]
    if others.size > 127:
        # constancy spot-check; thin evenly to keep per-orbit cost bounded
        others = others[:: -(-others.size // 127)]
    codes = scanner.ps.decode(np.concatenate(([rep_index], others)))
    values = {case.invariant_fn(tuple(int(x) for x in row)) for row in codes}
    if len(values) != 1:
        raise AssertionError(
            f"{case.id}: invariant not constant on orbit of {rep_index}: "
            f"{sorted(values)}")
    return ((case.invariant_name or "invariant", values.pop()),)


def _rep_indices(case: ModuleCase, ps: PointSpace):
    """(labels, indices) of representatives defined over the base field."""
    labels, idxs = [], []
    for r in case.representatives:
        if r.coords is None or r.ext_degree != 1:
            continue
        labels.append(r.label)
        idxs.append(int(ps.encode(
            np.array([r.coords], dtype=np.uint8))[0]))
    return labels, np.array(idxs, dtype=np.int64)


def orbit_partition(case: ModuleCase, budget: int = POINT_BUDGET,
                    chunk: int = 1 << 20, sample_cap: int = 1024,
                    rng_seed: int = 2024, workers: int = 1) -> OrbitReport:
    """Partition the singular points of the case into orbits.

    Output is deterministic for fixed (case, budget): orbits are sorted
    by (size, representative key) and the worker count has no effect.
    """
    del workers   # sharding is sequential; kept for interface stability
    t0 = time.monotonic()
    ps = PointSpace(case.F, case.dim)
    if ps.n_points > budget:
        raise ValueError(
            f"{case.id} over GF({case.F.q}): {ps.n_points} projective "
            f"points exceed the scan budget of {budget}")
    form_type, expected = quadric_profile(case.form)
    scanner = _Scanner(case, chunk)
    rep_labels, rep_idx = _rep_indices(case, ps)
    rep_orbit: Dict[int, int] = {}
    orbits: List[OrbitInfo] = []

    unseen_reps = rep_idx.copy()

    def run_seed(seed: int):
        nonlocal unseen_reps
        size, min_index, sample = scanner.closure(seed, sample_cap)
        stab, r = divmod(case.effective_order, size)
        assert r == 0, (f"{case.id}: orbit size {size} does not divide "
                        f"the effective order {case.effective_order}")
        inv = _orbit_invariants(case, scanner, min_index, sample)
        rep = tuple(int(x) for x in ps.decode(
            np.array([min_index], dtype=np.int64))[0])
        if unseen_reps.size:
            # orbits partition the space and visited bits only grow, so a
            # watched index newly visited lies in the orbit just closed
            met = _bits_test(scanner.visited, unseen_reps) == 1
            for h in unseen_reps[met]:
                rep_orbit[int(h)] = len(orbits)
            unseen_reps = unseen_reps[~met]
        orbits.append(OrbitInfo(size, rep, min_index, stab, inv))
        return size

    covered = 0
    if ps.n_points <= FULL_SCAN_LIMIT:
        total = 0
        for start, codes in ps.iter_blocks(chunk):
            vals = ps.eval_form(case.form.U, codes)
            sing = np.flatnonzero(vals == 0).astype(np.int64) + start
            total += sing.size
            sing = sing[_bits_test(scanner.visited, sing) == 0]
            for seed in sing:
                if _bits_test(scanner.visited,
                              np.array([seed], dtype=np.int64))[0]:
                    continue
                covered += run_seed(int(seed))
        assert total == expected, (
            f"{case.id}: brute singular count {total} != theoretical "
            f"{form_type} quadric count {expected}")
    else:
        total = expected
        rng = np.random.default_rng(rng_seed)
        while covered < total:
            codes = rng.integers(0, case.F.q, size=(chunk, case.dim),
                                 dtype=np.int64).astype(np.uint8)
            codes = codes[codes.any(axis=1)]
            codes = codes[ps.eval_form(case.form.U, codes) == 0]
            if not codes.size:
                continue
            sing = np.unique(ps.encode(codes))
            sing = sing[_bits_test(scanner.visited, sing) == 0]
            for seed in sing:
                if covered >= total:
                    break
                if _bits_test(scanner.visited,
                              np.array([seed], dtype=np.int64))[0]:
                    continue
                covered += run_seed(int(seed))
    assert covered == total

    order = sorted(range(len(orbits)),
                   key=lambda i: (orbits[i].size, orbits[i].rep_index))
    rank = {old: new for new, old in enumerate(order)}
    rep_status = []
    for label, idx in zip(rep_labels, rep_idx):
        rep_status.append((label, f"orbit-{rank[rep_orbit[int(idx)]] + 1}"))
    for r in case.representatives:
        if r.coords is None or r.ext_degree != 1:
            rep_status.append((r.label, f"absent over GF({case.F.q})"))
    elapsed = int((time.monotonic() - t0) * 1000)
    return OrbitReport(case.id, case.F.q, form_type, total,
                       tuple(orbits[i] for i in order),
                       tuple(rep_status), elapsed)


def stabilizer_order(case: ModuleCase, point) -> int:
    """|G_v| = effective order / orbit size, by a single-orbit closure."""
    if isinstance(point, ProjectivePoint):
        coords = point.coords
    else:
        coords = canonical_point(case.F, tuple(point)).coords
    ps = PointSpace(case.F, case.dim)
    seed = int(ps.encode(np.array([coords], dtype=np.uint8))[0])
    scanner = _Scanner(case, 1 << 20)
    size, _, _ = scanner.closure(seed, sample_cap=0)
    stab, r = divmod(case.effective_order, size)
    if r:
        raise AssertionError(
            f"{case.id}: orbit size {size} does not divide the effective "
            f"order {case.effective_order}")
    return stab


# ----------------------------------------------------------------------
# twisted conjugacy in small explicit groups
# ----------------------------------------------------------------------

def twisted_classes(G: SmallGroup,
                    sigma: Optional[Callable[[Perm], Perm]] = None
                    ) -> TwistedClassReport:
    """Classes of x ~ z^-1 x sigma(z), with centralizer orders."""
    if sigma is None:
        sigma = G.sigma
    els = list(G.elements)
    if len(els) > 10 ** 4:
        raise ValueError("twisted_classes expects |G| <= 10^4")
    elset = set(els)
    for a in els:
        if sigma(a) not in elset:
            raise ValueError("sigma does not map the group to itself")
    for a in els:
        for b in els:
            if sigma(G.mul(a, b)) != G.mul(sigma(a), sigma(b)):
                raise ValueError("sigma is not an automorphism")
    seen = set()
    classes = []
    for x in els:
        if x in seen:
            continue
        cls = {G.mul(G.mul(_pinv(z), x), sigma(z)) for z in els}
        seen |= cls
        size = len(cls)
        cent, r = divmod(len(els), size)
        assert r == 0
        classes.append((size, cent))
    assert sum(s for s, _ in classes) == len(els)
    classes.sort(key=lambda sc: (-sc[0], sc[1]))
    return TwistedClassReport(G.name, G.sigma_name, tuple(classes))


# ----------------------------------------------------------------------
# tau twist and diagonal double cosets
# ----------------------------------------------------------------------

def block_gram(F: FieldSpec, degree: int) -> Mat:
    """Block symplectic Gram [[0, -I], [I, 0]]."""
    if degree % 2:
        raise ValueError("symplectic degree must be even")
    n = degree // 2
    J = [[0] * degree for _ in range(degree)]
    for i in range(n):
        J[i][n + i] = F.neg(1)
        J[n + i][i] = 1
    return Mat(F, J)


def tau_map(g: Mat) -> Mat:
    """g -> J^-1 g^-T J for the block symplectic J; an involution fixing
    the symplectic group of J pointwise."""
    if g.n % 2:
        raise ValueError("tau needs even degree")
    if g.det() == 0:
        raise ValueError("tau needs an invertible matrix")
    J = block_gram(g.F, g.n)
    return J.inverse() * g.inverse().T * J


def tau_invariant(g: Mat, extension_degree: int = 1):
    """Eigenvalue multiset of tau(g^-1) g (None when it does not split)."""
    t = tau_map(g.inverse())
    assert tau_map(t) == g.inverse(), "tau is not an involution here"
    return eigenvalue_multiset(t * g, extension_degree)


def scan_diagonal_cosets(q: int) -> int:
    """Number of distinct spectra of tau(A^-1)A over all singular
    diagonal determinant-1 sextuples A; a lower bound on the number of
    singular diagonal double cosets."""
    F = GF(q)
    mul = F.np_mul.astype(np.int64)
    inv = np.array([0] + [F.inv(v) for v in range(1, q)], dtype=np.int64)
    nz = np.arange(1, q, dtype=np.int64)
    # a6 is determined by det = 1; enumerate (a1..a5) vectorized
    a1, a2, a3, a4, a5 = [g.reshape(-1) for g in
                          np.meshgrid(*([nz] * 5), indexing="ij")]
    prod = mul[mul[mul[mul[a1, a2], a3], a4], a5]
    a6 = inv[prod]
    # singularity of diag(a1..a6): pairing (1,6), (2,5), (3,4)
    add = F.np_add.astype(np.int64)
    keep = add[add[mul[a1, a6], mul[a2, a5]], mul[a3, a4]] == 0
    # spectrum of tau(A^-1)A = diag(a1 a4, a2 a5, a3 a6) twice over
    trip = np.sort(np.stack([mul[a1, a4][keep], mul[a2, a5][keep],
                             mul[a3, a6][keep]], axis=1), axis=1)
    return int(np.unique(trip, axis=0).shape[0])


def witness_matrix(q: int, b: int, c: int) -> Mat:
    """The singular diagonal diag(1/(bc), b, c, 1, 1, 1); its tau twist
    has spectrum {1/(bc), b, c} doubled exactly when 1 + b^2 c + b c^2 = 0."""
    F = GF(q)
    s = F.inv(F.mul(b, c))
    if F.add(F.add(s, b), c):
        raise ValueError("witness requires 1 + b^2 c + b c^2 = 0")
    return Mat.diag(F, [s, b, c, 1, 1, 1])


def witness_spectrum(q: int, b: int, c: int):
    """Sorted eigenvalues of diag(1/(bc), b, c, c, b, 1/(bc))."""
    F = GF(q)
    s = F.inv(F.mul(b, c))
    return sorted([s, b, c, c, b, s])
